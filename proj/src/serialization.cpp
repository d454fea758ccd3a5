#include "ecbures/serialization.hpp"

#include <fstream>
#include <sstream>

namespace ecbures {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return j.get<double>();
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InvalidInput(std::string(what) + " must be a nonnegative integer");
  }
  return Index(j.get<long long>());
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex must be [re, im]");
  return Complex(number(j[0], "real part"), number(j[1], "imaginary part"));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw InvalidInput("matrix must be a nonempty array of rows");
  }
  const Index rows = Index(j.size());
  const Index cols = Index(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[std::size_t(i)];
    if (!row.is_array() || Index(row.size()) != cols) throw InvalidInput("matrix rows differ in length");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[std::size_t(k)]);
  }
  require_finite(m, "matrix");
  return m;
}

Json operation_to_json(const QuantumOperation& op) {
  Json kraus = Json::array();
  for (const auto& k : op.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"kind", "kraus"}, {"d_in", op.d_in()}, {"d_out", op.d_out()}, {"kraus", kraus}};
}

QuantumOperation operation_from_json(const Json& j) {
  if (field(j, "kind") != "kraus") throw InvalidInput("operation kind must be \"kraus\"");
  Index d_in = count(field(j, "d_in"), "d_in");
  Index d_out = count(field(j, "d_out"), "d_out");
  const Json& list = field(j, "kraus");
  if (!list.is_array() || list.empty()) throw InvalidInput("kraus must be a nonempty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : list) kraus.push_back(matrix_from_json(k));
  return QuantumOperation::from_kraus(d_in, d_out, std::move(kraus));
}

Json hamiltonian_to_json(const Hamiltonian& h) {
  Json ev = Json::array();
  for (Index i = 0; i < h.dim(); ++i) ev.push_back(h.eigenvalues()(i));
  Json out{{"eigenvalues", ev}};
  if (!h.has_computational_basis()) out["basis"] = matrix_to_json(h.basis());
  return out;
}

Hamiltonian hamiltonian_from_json(const Json& j) {
  const Json& list = field(j, "eigenvalues");
  if (!list.is_array() || list.empty()) throw InvalidInput("eigenvalues must be a nonempty array");
  RealVector ev(Index(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) ev(Index(i)) = number(list[i], "eigenvalue");
  if (j.contains("basis") && !j.at("basis").is_null()) {
    return Hamiltonian::from_spectrum(ev, matrix_from_json(j.at("basis")));
  }
  return Hamiltonian::diagonal(ev);
}

PositiveOperator state_from_json(const Json& j) {
  const Json& m = j.is_object() ? field(j, "matrix") : j;
  return PositiveOperator::from(matrix_from_json(m));
}

Json stage_to_json(const StageRecord& s) {
  return Json{{"p", s.p},
              {"gap", s.gap},
              {"smoothed_lower", s.smoothed_lower},
              {"smoothed_upper", s.smoothed_upper},
              {"beta_n", s.beta_n},
              {"enorm", s.enorm},
              {"enorm_smoothed", s.enorm_smoothed},
              {"operator_norm", s.operator_norm},
              {"iterations", s.iterations},
              {"converged", s.converged},
              {"depolarized", s.depolarized}};
}

StageRecord stage_from_json(const Json& j) {
  StageRecord s;
  s.p = number(field(j, "p"), "p");
  s.gap = number(field(j, "gap"), "gap");
  s.smoothed_lower = number(field(j, "smoothed_lower"), "smoothed_lower");
  s.smoothed_upper = number(field(j, "smoothed_upper"), "smoothed_upper");
  s.beta_n = number(field(j, "beta_n"), "beta_n");
  s.enorm = number(field(j, "enorm"), "enorm");
  s.enorm_smoothed = number(field(j, "enorm_smoothed"), "enorm_smoothed");
  s.operator_norm = number(field(j, "operator_norm"), "operator_norm");
  s.iterations = int(count(field(j, "iterations"), "iterations"));
  s.converged = field(j, "converged").get<bool>();
  s.depolarized = field(j, "depolarized").get<bool>();
  return s;
}

Json certificate_to_json(const SaddleCertificate& c) {
  Json trace = Json::array();
  for (const auto& s : c.p_trace) trace.push_back(stage_to_json(s));
  return Json{{"u", matrix_to_json(c.u)},
              {"rho", matrix_to_json(c.rho.matrix())},
              {"lower_bound", c.lower_bound},
              {"upper_bound", c.upper_bound},
              {"gap", c.gap},
              {"p_trace", trace},
              {"iterations", c.iterations},
              {"converged", c.converged}};
}

SaddleCertificate certificate_from_json(const Json& j) {
  std::vector<StageRecord> trace;
  const Json& list = field(j, "p_trace");
  if (!list.is_array()) throw InvalidInput("p_trace must be an array");
  for (const auto& s : list) trace.push_back(stage_from_json(s));
  return SaddleCertificate{matrix_from_json(field(j, "u")),
                           PositiveOperator::unchecked(matrix_from_json(field(j, "rho"))),
                           number(field(j, "lower_bound"), "lower_bound"),
                           number(field(j, "upper_bound"), "upper_bound"),
                           number(field(j, "gap"), "gap"),
                           std::move(trace),
                           int(count(field(j, "iterations"), "iterations")),
                           field(j, "converged").get<bool>()};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ecbures

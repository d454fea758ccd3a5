#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecbures/fidelity.hpp"
#include "ecbures/instances.hpp"
#include "ecbures/ksw.hpp"
#include "ecbures/serialization.hpp"
#include "ecbures/verification.hpp"

using namespace ecbures;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kNotConverged = 2, kVerifyFailed = 3 };

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << dump(j);
  } else {
    write_json_file(out, j);
  }
}

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(part, &used);
      if (used != part.size() || v < 1) throw InvalidInput("");
      dims.push_back(Index(v));
    } catch (const std::exception&) {
      throw InvalidInput("--dims expects positive integers dA,dB,k");
    }
  }
  if (dims.size() != 3) throw InvalidInput("--dims expects three values dA,dB,k");
  return dims;
}

struct PairArgs {
  std::string rho, sigma, out;
};

struct EnormArgs {
  std::string x, hamiltonian, out;
  double energy = 0.0;
};

struct EcburesArgs {
  std::string phi, psi, hamiltonian, out, method = "ksw";
  double energy = 0.0;
  double tol = 1e-4;
  Index pad = 0;
  std::vector<double> schedule{1e-1, 1e-2, 1e-3, 1e-4};
  int restarts = 8;
  std::uint64_t seed = 0;
};

struct GenArgs {
  std::string kind = "random-channel", hamiltonian, out, path;
  Index d_in = 2, d_out = 2, kraus = 2;
  std::uint64_t seed = 0;
  double strength = 1.0;
  bool random_basis = false;
};

struct VerifyArgs {
  int trials = 30;
  std::uint64_t seed = 1;
  std::string dims = "2,2,2", report;
  Index pad = 2;
  double tol = 1e-4;
};

int run_pair(const PairArgs& a, bool distance) {
  PositiveOperator rho = state_from_json(read_json_file(a.rho));
  PositiveOperator sigma = state_from_json(read_json_file(a.sigma));
  if (distance) {
    emit(Json{{"bures_distance", bures_distance(rho, sigma)}}, a.out);
  } else {
    emit(Json{{"fidelity", fidelity(rho, sigma)}}, a.out);
  }
  return kOk;
}

int run_enorm(const EnormArgs& a) {
  ComplexMatrix x = matrix_from_json(read_json_file(a.x));
  Hamiltonian h = hamiltonian_from_json(read_json_file(a.hamiltonian));
  emit(Json{{"enorm", enorm(x, h, EnergyBound{a.energy})}}, a.out);
  return kOk;
}

int run_ecbures(const EcburesArgs& a) {
  QuantumOperation phi = operation_from_json(read_json_file(a.phi));
  QuantumOperation psi = operation_from_json(read_json_file(a.psi));
  Hamiltonian h = hamiltonian_from_json(read_json_file(a.hamiltonian));
  EnergyBound e{a.energy};
  Json out = Json::object();
  bool converged = true;
  if (a.method == "ksw" || a.method == "both") {
    ContinuationOptions opts;
    opts.schedule = a.schedule;
    opts.pad = a.pad;
    opts.saddle.tol = a.tol;
    SaddleCertificate c = solve_with_continuation(phi, psi, h, e, opts);
    converged = c.converged;
    out["certificate"] = certificate_to_json(c);
  }
  if (a.method == "direct" || a.method == "both") {
    out["direct"] = direct_ecbures(phi, psi, h, e, a.restarts, a.seed);
  }
  emit(out, a.out);
  return converged ? kOk : kNotConverged;
}

int run_gen(const GenArgs& a) {
  if (!a.hamiltonian.empty()) {
    Spacing spacing = a.hamiltonian == "linear"     ? Spacing::kLinear
                      : a.hamiltonian == "harmonic" ? Spacing::kHarmonic
                                                    : throw InvalidInput("--hamiltonian must be linear or harmonic");
    emit(hamiltonian_to_json(gen_hamiltonian(a.d_in, spacing, {}, a.seed, a.random_basis)), a.out);
    return kOk;
  }
  InstanceSpec spec;
  spec.kind = instance_kind_from_string(a.kind);
  spec.d_a = a.d_in;
  spec.d_b = a.d_out;
  spec.kraus_count = a.kraus;
  spec.seed = a.seed;
  spec.strength = a.strength;
  spec.path = a.path;
  emit(operation_to_json(make_operation(spec)), a.out);
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  std::vector<Index> dims = parse_dims(a.dims);
  VerificationConfig config;
  config.seed = a.seed;
  config.trials = a.trials;
  config.d_a = dims[0];
  config.d_b = dims[1];
  config.kraus_count = dims[2];
  config.pad = a.pad;
  config.tol = a.tol;
  Report report = run_verification_suite(config);
  std::cout << report_text(report);
  if (!a.report.empty()) write_json_file(a.report, report_to_json(report));
  return report.failed() == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-constrained Bures distance and operator E-norm toolkit"};
  app.require_subcommand(1);

  PairArgs fid_args, bures_args;
  for (auto [name, args] : {std::pair{"fidelity", &fid_args}, std::pair{"bures", &bures_args}}) {
    auto* sub = app.add_subcommand(name, std::string(name == std::string("bures") ? "Bures distance" : "Fidelity") +
                                             " of two positive operators");
    sub->add_option("--rho", args->rho, "first operator (JSON matrix)")->required();
    sub->add_option("--sigma", args->sigma, "second operator (JSON matrix)")->required();
    sub->add_option("--out", args->out, "output file (default stdout)");
  }

  EnormArgs enorm_args;
  auto* enorm_cmd = app.add_subcommand("enorm", "Operator E-norm of X");
  enorm_cmd->add_option("--x", enorm_args.x, "operator (JSON matrix)")->required();
  enorm_cmd->add_option("--hamiltonian", enorm_args.hamiltonian, "Hamiltonian (JSON)")->required();
  enorm_cmd->add_option("--energy", enorm_args.energy, "energy bound")->required();
  enorm_cmd->add_option("--out", enorm_args.out, "output file (default stdout)");

  EcburesArgs ec;
  auto* ec_cmd = app.add_subcommand("ecbures", "Energy-constrained Bures distance of two operations");
  ec_cmd->add_option("--phi", ec.phi, "first operation (JSON)")->required();
  ec_cmd->add_option("--psi", ec.psi, "second operation (JSON)")->required();
  ec_cmd->add_option("--hamiltonian", ec.hamiltonian, "Hamiltonian (JSON)")->required();
  ec_cmd->add_option("--energy", ec.energy, "energy bound")->required();
  ec_cmd->add_option("--method", ec.method, "ksw, direct or both")
      ->check(CLI::IsMember({"ksw", "direct", "both"}))
      ->capture_default_str();
  ec_cmd->add_option("--pad", ec.pad, "extra environment dimensions")->capture_default_str();
  ec_cmd->add_option("--tol", ec.tol, "target gap")->capture_default_str();
  ec_cmd->add_option("--schedule", ec.schedule, "smoothing schedule, decreasing")->delimiter(',');
  ec_cmd->add_option("--restarts", ec.restarts, "restarts for the direct estimator")->capture_default_str();
  ec_cmd->add_option("--seed", ec.seed, "seed for the direct estimator")->capture_default_str();
  ec_cmd->add_option("--out", ec.out, "output file (default stdout)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an operation or a Hamiltonian as JSON");
  gen_cmd->add_option("--kind", gen.kind,
                      "random-channel, random-operation, dephasing, depolarizing, prepare-state or from-file")
      ->capture_default_str();
  gen_cmd->add_option("--d-in", gen.d_in, "input dimension")->capture_default_str();
  gen_cmd->add_option("--d-out", gen.d_out, "output dimension")->capture_default_str();
  gen_cmd->add_option("--kraus", gen.kraus, "Kraus count")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "seed")->capture_default_str();
  gen_cmd->add_option("--strength", gen.strength, "dephasing or depolarizing strength")->capture_default_str();
  gen_cmd->add_option("--path", gen.path, "operation file for from-file");
  gen_cmd->add_option("--hamiltonian", gen.hamiltonian, "emit a linear or harmonic Hamiltonian of dimension --d-in");
  gen_cmd->add_flag("--random-basis", gen.random_basis, "Haar random eigenbasis for --hamiltonian");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify-ksw", "Run the acceptance suite");
  ver_cmd->add_option("--trials", ver.trials, "channel pairs in the main sandwich batch")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "master seed")->capture_default_str();
  ver_cmd->add_option("--dims", ver.dims, "dA,dB,k for the main batch")->capture_default_str();
  ver_cmd->add_option("--pad", ver.pad, "padding for the main batch")->capture_default_str();
  ver_cmd->add_option("--tol", ver.tol, "sandwich gap tolerance")->capture_default_str();
  ver_cmd->add_option("--report", ver.report, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (app.got_subcommand("fidelity")) return run_pair(fid_args, false);
    if (app.got_subcommand("bures")) return run_pair(bures_args, true);
    if (enorm_cmd->parsed()) return run_enorm(enorm_args);
    if (ec_cmd->parsed()) return run_ecbures(ec);
    if (gen_cmd->parsed()) return run_gen(gen);
    if (ver_cmd->parsed()) return run_verify(ver);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInvalid;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNotConverged;
  }
  return kInvalid;
}

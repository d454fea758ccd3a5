#include <cstdio>

#include "ecbures/verification.hpp"

int main() {
  ecbures::VerificationConfig config;
  ecbures::Report report = ecbures::run_verification_suite(config);
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    bool ok = report.criterion_passed(c);
    all = all && ok;
    std::printf("[PRIMARY] criterion %d %s: %s\n", c, ok ? "PASS" : "FAIL", ecbures::criterion_title(c));
    for (const auto& k : report.checks) {
      if (k.criterion != c) continue;
      std::printf("    %s %s measured=%.6g bound=%.6g tol=%.3g%s%s\n", k.passed ? "ok  " : "FAIL",
                  k.name.c_str(), k.measured, k.bound, k.tolerance, k.note.empty() ? "" : " note=",
                  k.note.c_str());
    }
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

#pragma once

#include <iosfwd>

#include "config.hpp"

namespace lue::cli {

/// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kVerificationFailure = 1,
  kConfigError = 2,
  kPrecisionCeiling = 3,
};

/// Table of (n, t, alpha_n, beta_n, h_n, R_n, r_n, S_n, H_n, G) per grid point.
int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// Forces A = 0, B = 1 and drops lambda, beta.
RawConfig gap_preset(RawConfig raw);
/// compute with A = 0, B = 1, so G is the probability that no eigenvalue lies below t.
int cmd_gap(RunConfig cfg, std::ostream& out, std::ostream& err);
/// Runs the selected suites; exit 0 iff no record failed or errored.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// verify restricted to the brute-force oracle suite (n <= 3).
int cmd_oracle(RunConfig cfg, std::ostream& out, std::ostream& err);
/// Per-n trajectories of S_n, H_n and the Painleve V and sigma-form residuals.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: `lue <subcommand> [--config FILE] [--key value ...]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lue::cli

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "config.hpp"

namespace nlsscat::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDivergence = 3,
  kDomainInvalid = 4,
  kIoError = 5,
};

struct ExecOptions {
  std::filesystem::path out_dir = ".";
  int workers = 1;
  bool verbose = false;
};

/// Trajectory CSV. Divergence exits 3, a sample leaving the box exits 4.
int run_simulate(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log);

/// Profile CSV plus a one-row report (Pohozaev residuals, C_GN). Needs
/// lambda > 0.
int run_groundstate(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log);

/// Trajectory, report row, summary text and, when Scattered, the
/// scattering-state profile. A diverged run is a BlowupDetected verdict and
/// exits 0; a run that left the box exits 4.
int run_classify(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log);

/// One classify per sweep value, run on up to opt.workers threads; one
/// aggregated CSV.
int run_sweep(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log);

}  // namespace nlsscat::cli

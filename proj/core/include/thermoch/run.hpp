#pragma once

#include "thermoch/analysis.hpp"
#include "thermoch/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>

namespace thermoch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

struct RunContext {
  /// Overrides the config's output directory when nonempty.
  std::filesystem::path output_dir;
  bool quiet = false;
  /// Seeds the randomized property sweeps only.
  std::uint64_t seed = 0;
  std::ostream* log = nullptr;
};

enum class VerifyTarget { Potentials, Spectral, Elliptic };

std::string to_string(VerifyTarget target);

/// Each run writes its artifacts into the output directory and returns an
/// exit status: kExitOk, or kExitNumeric when the run failed or a check or
/// monitor reported a violation (artifacts are still written).
///
///   simulate:   trajectory.csv, summary.json, timing.json
///   verify:     checks.csv, summary.json, timing.json
///   converge:   convergence.csv, summary.json, timing.json
///   depend:     dependence.csv, summary.json, timing.json
int run_simulate(const RunConfig& config, const RunContext& ctx);
int run_verify(VerifyTarget target, const RunConfig& config, const RunContext& ctx);
/// Re-checks a trajectory.csv against the invariant band and finiteness.
int run_verify_trajectory(const RunConfig& config, const std::filesystem::path& csv, const RunContext& ctx);
int run_converge(ConvergenceKind kind, const RunConfig& config, const RunContext& ctx);
int run_depend(const RunConfig& first, const RunConfig& second, const RunContext& ctx);

/// Maps an exception thrown by parsing or running to an exit status.
int exit_code_for(const std::exception& e);

} // namespace thermoch

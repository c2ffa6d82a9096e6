#pragma once

#include "thermoch/analysis.hpp"
#include "thermoch/verify.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thermoch {

/// Header: t, mean_phi, mean_phi_exact, energy, dissipation_mu,
/// dissipation_w, source_power, then NormSample::names. Values use %.17g.
std::string trajectory_csv(std::span<const DiagnosticsRecord> records);

/// Inverse of trajectory_csv. Throws ParseError on a malformed header or row.
std::vector<DiagnosticsRecord> parse_trajectory_csv(std::string_view text);

std::string convergence_csv(const ConvergenceTable& table);
std::string dependence_csv(std::span<const std::pair<std::string, DependenceReport>> rows);
std::string checks_csv(std::span<const Check> checks);

/// Throws IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

} // namespace thermoch

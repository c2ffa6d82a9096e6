#include "thermoch/output.hpp"

#include "thermoch/error.hpp"
#include "thermoch/expression.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace thermoch {

namespace {

constexpr std::string_view kLeading[] = {"t",           "mean_phi",       "mean_phi_exact", "energy",
                                         "dissipation_mu", "dissipation_w", "source_power"};

std::string csv_header() {
  std::string h;
  for (auto name : kLeading) h += std::string(h.empty() ? "" : ",") + std::string(name);
  for (auto name : NormSample::names) h += "," + std::string(name);
  return h;
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

} // namespace

std::string trajectory_csv(std::span<const DiagnosticsRecord> records) {
  std::string out = csv_header() + "\n";
  for (const auto& r : records) {
    const auto n = r.norms.values();
    append_row(out, {r.t, r.mean_phi, r.mean_phi_exact, r.energy, r.dissipation_mu, r.dissipation_w, r.source_power,
                     n[0], n[1], n[2], n[3], n[4], n[5], n[6]});
  }
  return out;
}

std::vector<DiagnosticsRecord> parse_trajectory_csv(std::string_view text) {
  std::vector<DiagnosticsRecord> out;
  int line_no = 0;
  const std::string header = csv_header();
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != header) throw ParseError(line_no, "unexpected trajectory header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> v;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view cell = line.substr(0, comma);
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (cell.empty() || (ec != std::errc{} && ec != std::errc::result_out_of_range) ||
          ptr != cell.data() + cell.size())
        throw ParseError(line_no, "malformed number '" + std::string(cell) + "'");
      v.push_back(x);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (v.size() != std::size(kLeading) + NormSample::names.size())
      throw ParseError(line_no, "expected " + std::to_string(std::size(kLeading) + NormSample::names.size()) +
                                    " columns, got " + std::to_string(v.size()));
    DiagnosticsRecord r;
    r.t = v[0];
    r.mean_phi = v[1];
    r.mean_phi_exact = v[2];
    r.energy = v[3];
    r.dissipation_mu = v[4];
    r.dissipation_w = v[5];
    r.source_power = v[6];
    r.norms = NormSample::from_values({v[7], v[8], v[9], v[10], v[11], v[12], v[13]});
    out.push_back(r);
  }
  if (line_no == 0) throw ParseError(1, "empty trajectory");
  return out;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::string out = to_string(table.kind) + ",error,slope,xi_L1Q,xi_L2_L6\n";
  for (const auto& r : table.rows) append_row(out, {r.parameter, r.error, r.slope, r.xi_L1Q, r.xi_L2_L6});
  return out;
}

std::string dependence_csv(std::span<const std::pair<std::string, DependenceReport>> rows) {
  std::string out = "label,lhs,f_L2Vstar_plus_L1Q,f_L1Q_sqrt,g_convolution_L2H,rhs_sum,empirical_K2,xi1_L1Q,xi2_L1Q\n";
  for (const auto& [label, r] : rows) {
    out += label + ",";
    append_row(out, {r.lhs, r.f_L2Vstar_plus_L1Q, r.f_L1Q_sqrt, r.g_convolution_L2H, r.rhs_sum(), r.empirical_K2,
                     r.xi1_L1Q, r.xi2_L1Q});
  }
  return out;
}

std::string checks_csv(std::span<const Check> checks) {
  std::string out = "check,value,tolerance,pass\n";
  for (const auto& c : checks) {
    out += c.name + "," + format_double(c.value) + "," + format_double(c.tolerance) + "," +
           (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace thermoch

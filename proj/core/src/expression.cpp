#include "thermoch/expression.hpp"

#include "thermoch/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace thermoch {

namespace {

class Cursor {
public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || s_.substr(pos_, 3) == "inf" ||
           s_.substr(pos_, 3) == "nan";
  }
  double number() {
    skip_ws();
    double x = 0.0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), x);
    if (ec != std::errc{} && ec != std::errc::result_out_of_range) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return x;
  }
  int integer() {
    skip_ws();
    int k = 0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), k);
    if (ec != std::errc{} || k < 0) fail("expected a nonnegative mode index");
    pos_ += static_cast<std::size_t>(ptr - first);
    return k;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigurationError("expression '" + std::string(s_) + "': " + what + " at offset " +
                             std::to_string(pos_));
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

CosineTerm parse_cos(Cursor& c, double coefficient) {
  c.expect('(');
  CosineTerm t{coefficient, c.integer(), 0};
  if (c.accept(',')) t.k2 = c.integer();
  c.expect(')');
  return t;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

} // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SpatialExpr SpatialExpr::parse(std::string_view text) {
  Cursor c(text);
  SpatialExpr e;
  if (c.done()) c.fail("empty expression");
  bool first = true;
  while (!c.done()) {
    double sign = 1.0;
    if (!first) {
      if (c.accept('-')) sign = -1.0;
      else if (!c.accept('+')) c.fail("expected '+' or '-'");
    }
    first = false;
    if (c.accept('-')) sign = -sign;
    else c.accept('+');

    if (c.accept_word("cos")) {
      e.terms.push_back(parse_cos(c, sign));
      continue;
    }
    if (!c.at_number()) c.fail("expected a number or cos(...)");
    const double x = sign * c.number();
    c.accept('*');
    if (c.accept_word("cos")) e.terms.push_back(parse_cos(c, x));
    else e.constant += x;
  }
  return e;
}

std::string SpatialExpr::to_string() const {
  std::string out = format_double(constant);
  for (const auto& t : terms) {
    out += " + " + format_double(t.coefficient) + " cos(" + std::to_string(t.k1) + "," + std::to_string(t.k2) + ")";
  }
  return out;
}

Field SpatialExpr::evaluate(const std::shared_ptr<const BoxDomain>& domain) const {
  for (const auto& t : terms) {
    if (domain->dim == 1 && t.k2 != 0) {
      throw ConfigurationError("cos(" + std::to_string(t.k1) + "," + std::to_string(t.k2) +
                               ") needs a 2-D domain");
    }
  }
  Field f(domain);
  const double L1 = domain->lengths[0];
  const double L2 = domain->dim == 2 ? domain->lengths[1] : 1.0;
  for (int k = 0; k < f.size(); ++k) {
    const auto x = domain->point(k);
    double v = constant;
    for (const auto& t : terms) {
      v += t.coefficient * std::cos(t.k1 * std::numbers::pi * x[0] / L1) *
           std::cos(t.k2 * std::numbers::pi * x[1] / L2);
    }
    f.values()[k] = v;
  }
  return f;
}

int SpatialExpr::max_index(int axis) const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, axis == 0 ? t.k1 : t.k2);
  return m;
}

DataExpr DataExpr::constant(double c) {
  DataExpr d;
  d.pieces[0].constant = c;
  return d;
}

DataExpr DataExpr::parse(std::string_view text) {
  text = trim(text);
  constexpr std::string_view head = "piecewise(";
  if (!text.starts_with(head)) {
    DataExpr d;
    d.pieces[0] = SpatialExpr::parse(text);
    return d;
  }
  if (!text.ends_with(")")) throw ConfigurationError("piecewise schedule '" + std::string(text) + "' lacks ')'");
  std::string_view body = text.substr(head.size(), text.size() - head.size() - 1);

  DataExpr d;
  d.starts.clear();
  d.pieces.clear();
  while (true) {
    const auto bar = body.find('|');
    const std::string_view entry = trim(body.substr(0, bar));
    const auto colon = entry.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigurationError("piecewise entry '" + std::string(entry) + "' must read '<start>: <expr>'");
    }
    Cursor tc(entry.substr(0, colon));
    const double start = tc.number();
    if (!tc.done()) tc.fail("trailing characters after start time");
    if (d.starts.empty() ? start != 0.0 : !(start > d.starts.back())) {
      throw ConfigurationError("piecewise start times must begin at 0 and increase");
    }
    d.starts.push_back(start);
    d.pieces.push_back(SpatialExpr::parse(entry.substr(colon + 1)));
    if (bar == std::string_view::npos) break;
    body.remove_prefix(bar + 1);
  }
  return d;
}

std::string DataExpr::to_string() const {
  if (time_independent()) return pieces[0].to_string();
  std::string out = "piecewise(";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += " | ";
    out += format_double(starts[i]) + ": " + pieces[i].to_string();
  }
  return out + ")";
}

DataSchedule DataExpr::build(const std::shared_ptr<const BoxDomain>& domain) const {
  if (time_independent()) return DataSchedule(pieces[0].evaluate(domain));
  std::vector<Field> fields;
  fields.reserve(pieces.size());
  for (const auto& p : pieces) fields.push_back(p.evaluate(domain));
  return DataSchedule(starts, std::move(fields));
}

} // namespace thermoch

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "braidopt/errors.hpp"
#include "braidopt/harness.hpp"

namespace braidopt {

std::vector<PublishedBraid> load_published_braids(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open braid table " + file.string());
  const auto doc = nlohmann::json::parse(in);
  std::vector<PublishedBraid> rows;
  for (const auto& r : doc.at("rows")) {
    PublishedBraid b;
    b.n = r.at("n");
    b.length = r.at("l");
    b.epsilon = r.at("epsilon");
    b.epsilon_digits = r.value("epsilon_digits", 5);
    b.log10_epsilon = r.at("log10_epsilon");
    b.sk_estimate = r.at("sk_estimate");
    b.epsilon_tolerance = r.value("epsilon_tolerance", 1e-7);
    b.braid = r.at("braid");
    rows.push_back(std::move(b));
  }
  return rows;
}

double BraidCheck::length_advantage() const {
  return effective_length == 0 ? 0.0 : sk_estimate / static_cast<double>(effective_length);
}

namespace {

// Same mantissa once both are rounded to `digits` significant digits.
bool same_printed_digits(double value, double printed, int digits) {
  const double exponent = std::floor(std::log10(std::abs(printed)));
  const double unit = std::pow(10.0, exponent - digits + 1);
  return std::llround(value / unit) == std::llround(printed / unit);
}

}  // namespace

std::vector<BraidCheck> verify_published_braids(const GeneratorSet& gs,
                                                const std::vector<PublishedBraid>& rows) {
  std::vector<BraidCheck> out;
  for (const auto& row : rows) {
    BraidCheck c;
    c.row = row;
    try {
      const BraidWord w = parse_braid_text(gs, row.braid);
      c.raw_length = w.size();
      c.effective_length = effective_length(gs, w);
      c.epsilon = braid_error(braid_product(gs, w), gs.target());
      c.sk_estimate = sk_length_estimate(c.epsilon);
      c.epsilon_ok = std::abs(c.epsilon - row.epsilon) <= row.epsilon_tolerance;
      c.digits_ok = same_printed_digits(c.epsilon, row.epsilon, row.epsilon_digits);
      c.log_ok = std::abs(std::log10(c.epsilon) - row.log10_epsilon) <= kLog10Tolerance;
      c.length_ok = c.effective_length == row.length;
      c.sk_ok = std::abs(c.sk_estimate - row.sk_estimate) <= kSkTolerance;
    } catch (const ParseError& e) {
      c.error = e.what();
    } catch (const std::domain_error& e) {
      c.error = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_braid_report(const std::vector<BraidCheck>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass() ? "PASS" : "FAIL") << "  n=" << std::setw(3) << c.row.n;
    if (!c.error.empty()) {
      os << "  error: " << c.error << '\n';
      continue;
    }
    os << std::scientific << std::setprecision(6) << "  eps=" << c.epsilon
       << " (table " << std::setprecision(4) << c.row.epsilon << ')' << std::defaultfloat
       << "  l=" << c.effective_length << " (raw " << c.raw_length << ", table " << c.row.length
       << ')' << std::fixed << std::setprecision(2) << "  sk=" << c.sk_estimate << " (table "
       << c.row.sk_estimate << ")  sk/l=" << c.length_advantage() << std::defaultfloat;
    if (!c.epsilon_ok) os << "  [eps outside " << c.row.epsilon_tolerance << ']';
    if (!c.digits_ok) os << "  [printed digits differ]";
    if (!c.log_ok) os << "  [log10 eps differs]";
    if (!c.length_ok) os << "  [length differs]";
    if (!c.sk_ok) os << "  [sk estimate differs]";
    os << '\n';
  }
  return os.str();
}

}  // namespace braidopt

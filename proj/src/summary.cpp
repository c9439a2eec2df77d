#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>
#include <tuple>

#include "braidopt/harness.hpp"

namespace braidopt {

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of empty data");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

std::vector<GroupSummary> summarize_results(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw std::runtime_error("cannot read " + jsonl.string());
  using Key = std::tuple<std::string, std::string, int>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (j.value("type", "") != "final") continue;
    auto& g = groups[Key{j.at("method"), j.at("variant"), j.at("n")}];
    g.first.push_back(j.at("best_fitness"));
    g.second.push_back(j.at("best_epsilon"));
  }
  std::vector<GroupSummary> out;
  for (const auto& [key, vals] : groups) {
    const auto& [fit, eps] = vals;
    GroupSummary s;
    std::tie(s.method, s.variant, s.n) = key;
    s.runs = fit.size();
    s.median = median(fit);
    s.q1 = quantile(fit, 0.25);
    s.q3 = quantile(fit, 0.75);
    s.min = *std::min_element(fit.begin(), fit.end());
    s.max = *std::max_element(fit.begin(), fit.end());
    double sum = 0.0;
    for (double f : fit) sum += f;
    s.mean = sum / static_cast<double>(fit.size());
    s.median_epsilon = median(eps);
    s.min_epsilon = *std::min_element(eps.begin(), eps.end());
    out.push_back(s);
  }
  return out;
}

void write_summary_stats_csv(std::ostream& os, const std::vector<GroupSummary>& groups) {
  os << "method,variant,n,runs,median_fitness,q1_fitness,q3_fitness,mean_fitness,min_fitness,"
        "max_fitness,median_epsilon,min_epsilon\n"
     << std::setprecision(12);
  for (const auto& g : groups)
    os << g.method << ",\"" << g.variant << "\"," << g.n << ',' << g.runs << ',' << g.median
       << ',' << g.q1 << ',' << g.q3 << ',' << g.mean << ',' << g.min << ',' << g.max << ','
       << g.median_epsilon << ',' << g.min_epsilon << '\n';
}

}  // namespace braidopt

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidopt/boltzmann.hpp"
#include "braidopt/eda.hpp"

namespace braidopt {

// ------------------------------------------------------- published braids

struct PublishedBraid {
  int n = 0;
  std::size_t length = 0;
  double epsilon = 0.0;
  int epsilon_digits = 5;  // significant digits printed
  double log10_epsilon = 0.0;
  double sk_estimate = 0.0;
  double epsilon_tolerance = 1e-7;
  std::string braid;
};

std::vector<PublishedBraid> load_published_braids(const std::filesystem::path& file);

struct BraidCheck {
  PublishedBraid row;
  std::string error;  // parse failure, empty otherwise
  std::size_t raw_length = 0;
  std::size_t effective_length = 0;
  double epsilon = 0.0;
  double sk_estimate = 0.0;
  bool epsilon_ok = false;   // within the row tolerance
  bool digits_ok = false;    // rounds to the printed mantissa
  bool log_ok = false;
  bool length_ok = false;
  bool sk_ok = false;

  bool pass() const {
    return error.empty() && epsilon_ok && digits_ok && log_ok && length_ok && sk_ok;
  }
  // sk_estimate / effective_length
  double length_advantage() const;
};

inline constexpr double kSkTolerance = 0.01;
inline constexpr double kLog10Tolerance = 1e-4;

std::vector<BraidCheck> verify_published_braids(const GeneratorSet& gs,
                                                const std::vector<PublishedBraid>& rows);
std::string format_braid_report(const std::vector<BraidCheck>& checks);

// -------------------------------------------------------------- boltzmann

struct BoltzmannReport {
  std::uint64_t words = 0;
  std::vector<double> position_average;
  double adjacent_mi = 0.0;      // mean over (i, i+1)
  double non_adjacent_mi = 0.0;  // mean over |i - j| > 1
  std::uint64_t dominance_violations = 0;  // words with fitness_b < fitness_a
};

double mean_adjacent_mi(const MarginalSet& m);
double mean_non_adjacent_mi(const MarginalSet& m);

// Writes univariate.csv, mutual_info.csv (for spec `a`) and scatter.csv
// (a against b) into out_dir.
BoltzmannReport write_boltzmann_outputs(const GeneratorSet& gs, const FitnessSpec& a,
                                        const FitnessSpec& b, int n, double temperature,
                                        const std::filesystem::path& out_dir,
                                        int guard = kDefaultEnumerationGuard);

void write_univariate_csv(std::ostream& os, const MarginalSet& m);
void write_mutual_info_csv(std::ostream& os, const MarginalSet& m);

// ------------------------------------------------------------ experiments

struct Job {
  Variant variant;
  int n = 0;
  int run = 0;
  std::uint64_t seed = 0;
};

struct ExperimentGrid {
  std::vector<int> ns{50, 100, 150, 200, 250};
  std::vector<Variant> variants = all_variants();
  int runs = 100;
  std::uint64_t root_seed = 20140101;

  static std::vector<Variant> all_variants();
  static std::uint64_t job_seed(std::uint64_t root, int variant_id, int n, int run);
  std::vector<Job> jobs() const;
};

struct BudgetOverrides {
  BudgetPreset preset = BudgetPreset::kDesk;
  std::optional<int> population;
  std::optional<int> generations;
  std::optional<std::uint64_t> max_evaluations;
};

EdaConfig config_for(const Job& job, const BudgetOverrides& budget);

// JSONL lines for one run: one object per generation, then a final object
// carrying the full config and the best braid in text form. Wall-clock time
// is not part of the record.
std::string record_to_jsonl(const RunRecord& rec, const GeneratorSet& gs);
nlohmann::json record_final_json(const RunRecord& rec, const GeneratorSet& gs);

std::string summary_csv_header();
std::string summary_csv_line(const RunRecord& rec);

// results.jsonl + summary.csv under a directory, appended by one writer.
class ResultStore {
 public:
  explicit ResultStore(const std::filesystem::path& dir);
  void append(const RunRecord& rec, const GeneratorSet& gs);
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::ofstream jsonl_;
  std::ofstream csv_;
  std::mutex mu_;
};

// Runs independent jobs on `workers` threads; `on_done` sees records in job
// order regardless of completion order.
void run_jobs(std::size_t count, int workers, const std::function<RunRecord(std::size_t)>& job,
              const std::function<void(std::size_t, const RunRecord&)>& on_done);

// --------------------------------------------------------------- summary

struct GroupSummary {
  std::string method;
  std::string variant;
  int n = 0;
  std::size_t runs = 0;
  double median = 0, q1 = 0, q3 = 0, mean = 0, min = 0, max = 0;  // best fitness
  double median_epsilon = 0, min_epsilon = 0;
};

// Linear-interpolation quantile of unsorted data.
double quantile(std::vector<double> v, double q);
double median(std::vector<double> v);

std::vector<GroupSummary> summarize_results(const std::filesystem::path& jsonl);
void write_summary_stats_csv(std::ostream& os, const std::vector<GroupSummary>& groups);

}  // namespace braidopt

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "braidopt/braid.hpp"
#include "braidopt/fitness.hpp"
#include "braidopt/models.hpp"

namespace braidopt {

enum class FunctionMode { kPlain = 0, kPrefixBest = 1, kPrefixBestRecodeI = 2, kPrefixBestRecodeII = 3 };
enum class SamplingMode { kFull = 0, kPartialI = 1, kPartialII = 2 };

inline constexpr std::array<double, 4> kLambdaValues{0.0, 0.01, 0.05, 0.1};

// The five-axis algorithm variant, written "L tf tl ts pm".
struct Variant {
  int local = 0;     // 0..1
  int function = 0;  // 0..3
  int lambda = 0;    // 0..3, index into kLambdaValues
  int sampling = 0;  // 0..2
  int model = 0;     // 0..2

  static constexpr int kCount = 2 * 4 * 4 * 3 * 3;

  // Mixed-radix position in [0, kCount).
  int id() const;
  static Variant from_id(int id);

  // Five integers separated by whitespace or commas; throws
  // std::invalid_argument listing the axis domains on bad input.
  static Variant parse(const std::string& text);
  std::string to_string() const;

  void validate() const;
  friend bool operator==(const Variant&, const Variant&) = default;
};

FitnessSpec fitness_spec(FunctionMode mode, double lambda);

enum class BudgetPreset { kPaper, kDesk };

struct EdaConfig {
  int n = 50;
  bool use_local = false;
  FunctionMode function_mode = FunctionMode::kPlain;
  int lambda_index = 0;
  SamplingMode sampling_mode = SamplingMode::kFull;
  ModelType model_type = ModelType::kUnivariate;
  int population = 10000;
  int generations = 750;
  double truncation = 0.05;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_evaluations;
  int workers = 1;  // evaluation threads; results do not depend on it

  // Population and generation counts from the preset.
  static EdaConfig from_variant(const Variant& v, int n, BudgetPreset preset, std::uint64_t seed);

  Variant variant() const;
  double lambda() const { return kLambdaValues.at(lambda_index); }
  FitnessSpec fitness() const { return fitness_spec(function_mode, lambda()); }
  std::size_t selected_count() const;
  void validate() const;
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double best_epsilon = 0.0;
  std::size_t best_length = 0;
  double incumbent_fitness = 0.0;
  std::uint64_t evaluations = 0;  // cumulative
  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct RunRecord {
  std::string method = "eda";  // eda | random | greedy
  EdaConfig config;
  std::vector<GenerationStats> generations;
  BraidWord best_word;       // genotype of the incumbent
  BraidEvaluation best_eval;
  BraidWord best_braid;      // the braid the fitness refers to
  std::uint64_t total_evaluations = 0;
  bool budget_exhausted = false;
  double wall_clock_seconds = 0.0;
};

// Everything except wall-clock time.
bool same_outcome(const RunRecord& a, const RunRecord& b);

// Indices of the ceil(fraction * N) fittest, best first; ties favour the lower
// index.
std::vector<std::size_t> truncation_select(const std::vector<double>& fitness, double fraction);

struct GreedyResult {
  BraidWord word;
  BraidEvaluation eval;
  std::uint64_t evaluations = 0;  // neighbour evaluations only
};

// Best-improvement hill climbing over the 3n (generally (2g-1)n) one-symbol
// substitutions; ties go to the lowest position, then the lowest symbol.
GreedyResult greedy_improve(const GeneratorSet& gs, const FitnessSpec& spec, WordView w);

// Fitness of every one-symbol neighbour of a fixed word, reusing the word's
// prefix and suffix products.
class Neighborhood {
 public:
  Neighborhood(const GeneratorSet& gs, const FitnessSpec& spec, WordView w);
  double fitness_with(std::size_t pos, Symbol s) const;

 private:
  const GeneratorSet& gs_;
  const FitnessSpec& spec_;
  WordView w_;
  std::vector<Matrix2> prefix_;  // prefix_[k] = product of the first k symbols
  std::vector<Matrix2> suffix_;  // suffix_[k] = product of symbols k..n-1
  std::vector<double> prefix_best_;  // max f over prefixes of length 1..k
  mutable std::vector<Symbol> scratch_;
};

// The braid a fitness value refers to: the reduced best prefix for f-bar, the
// word itself otherwise.
BraidWord realized_braid(const FitnessSpec& spec, WordView w, const BraidEvaluation& ev);

RunRecord run_eda(const EdaConfig& config, const GeneratorSet& gs);

struct BaselineConfig {
  int n = 50;
  int draws = 10000;
  double lambda = 0.01;
  FunctionMode function_mode = FunctionMode::kPrefixBest;
  std::uint64_t seed = 1;
};

// Best of `draws` uniform random words.
RunRecord random_search(const BaselineConfig& config, const GeneratorSet& gs);
// greedy_improve from each of the same random words random_search draws.
RunRecord greedy_search(const BaselineConfig& config, const GeneratorSet& gs);

std::string to_string(FunctionMode m);
std::string to_string(SamplingMode m);

}  // namespace braidopt

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "braidopt/braid.hpp"
#include "braidopt/rng.hpp"

namespace braidopt {

enum class ModelType { kUnivariate = 0, kMarkov = 1, kTree = 2 };
enum class PartialMode { kTypeI, kTypeII };

using Row = std::vector<double>;
// table[a][b] = p(child = b | parent = a)
using ConditionalTable = std::vector<Row>;

// Independent positions.
struct UnivariateModel {
  int n = 0;
  int arity = 4;
  std::vector<Row> probs;  // n x arity
};

// p(x_1) prod_i p(x_i | x_{i-1})
struct MarkovChainModel {
  int n = 0;
  int arity = 4;
  Row initial;
  std::vector<ConditionalTable> transitions;  // transitions[i - 1] drives position i
};

// Spanning forest over the positions; each root has a marginal, each
// non-root a table conditioned on its parent.
struct TreeModel {
  static constexpr int kNoParent = -1;

  int n = 0;
  int arity = 4;
  std::vector<int> parent;
  std::vector<Row> root_probs;            // empty for non-roots
  std::vector<ConditionalTable> cpts;     // empty for roots
  std::vector<int> order;                 // parents before children
  std::vector<std::vector<double>> learned_mi;  // bits, diagnostics only
};

using ProbModel = std::variant<UnivariateModel, MarkovChainModel, TreeModel>;

// Laplace pseudo-count.
inline constexpr double kSmoothing = 1.0;
// Pairs with mutual information below this (bits) never become tree edges.
inline constexpr double kMiEdgeThreshold = 1e-9;

using Sample = std::vector<BraidWord>;

UnivariateModel learn_univariate(const Sample& sample, int arity = 4,
                                 double alpha = kSmoothing);
MarkovChainModel learn_markov(const Sample& sample, int arity = 4, double alpha = kSmoothing);
TreeModel learn_tree(const Sample& sample, int arity = 4, double alpha = kSmoothing);
ProbModel learn_model(ModelType type, const Sample& sample, int arity = 4,
                      double alpha = kSmoothing);

// Mutual information (bits) of every pair under smoothed pairwise counts.
std::vector<std::vector<double>> pairwise_mutual_information(const Sample& sample, int arity,
                                                             double alpha = kSmoothing);

// Maximum-weight spanning forest (Kruskal); equal weights resolve to the
// lexicographically smallest (i, j). Returns parent indices, roots at the
// lowest index of each component.
std::vector<int> maximum_spanning_forest(const std::vector<std::vector<double>>& weights,
                                         double threshold = kMiEdgeThreshold);

ModelType model_type(const ProbModel& m);
int model_length(const ProbModel& m);

BraidWord sample_one(const ProbModel& m, Rng& rng);
Sample sample_full(const ProbModel& m, std::size_t count, Rng& rng);

// Resamples a random subset of 1..n (type I) or 1..floor(n/2) (type II)
// positions of `base`; everything else is copied.
BraidWord sample_partial(const ProbModel& m, WordView base, PartialMode mode, Rng& rng);

// Resamples exactly `count` uniformly chosen positions. count = 0 returns base.
BraidWord sample_partial_count(const ProbModel& m, WordView base, std::size_t count, Rng& rng);

// Resamples the given positions in ancestral order, each conditioned on the
// current value of its parent (predecessor for the chain).
BraidWord resample_positions(const ProbModel& m, WordView base, std::span<const int> positions,
                             Rng& rng);

double log_likelihood(const ProbModel& m, WordView w);

nlohmann::json model_to_json(const ProbModel& m);
ProbModel model_from_json(const nlohmann::json& j);

std::string to_string(ModelType t);

}  // namespace braidopt

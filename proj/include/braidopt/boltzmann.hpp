#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "braidopt/braid.hpp"
#include "braidopt/fitness.hpp"

namespace braidopt {

inline constexpr int kDefaultEnumerationGuard = 13;

// p(x) = exp(g(x)/T) / Z over every word of length n. Word index is base-arity
// little-endian: position 1 is the least significant digit.
struct BoltzmannTable {
  int n = 0;
  int arity = 4;
  double temperature = 1.0;
  std::vector<double> log_weights;  // g(x) / T
  double log_z = 0.0;

  std::size_t size() const noexcept { return log_weights.size(); }
  double probability(std::size_t index) const;
  std::vector<double> probabilities() const;
};

struct MarginalSet {
  int n = 0;
  int arity = 4;
  // univariate[i][a] = p(X_i = a)
  std::vector<std::vector<double>> univariate;
  // bivariate[i][j][a * arity + b] = p(X_i = a, X_j = b), populated for i < j
  std::vector<std::vector<std::vector<double>>> bivariate;
  // bits, symmetric, zero diagonal
  std::vector<std::vector<double>> mutual_info;

  // Mean over positions of univariate[i][a].
  std::vector<double> position_average() const;
};

std::uint64_t word_count(int n, int arity);
BraidWord word_from_index(std::uint64_t index, int n, int arity);
std::uint64_t index_from_word(WordView w, int arity);

// Fitness of every word of length n, in table order.
std::vector<double> enumerate_fitness(const GeneratorSet& gs, const FitnessSpec& spec, int n,
                                      int guard = kDefaultEnumerationGuard);

BoltzmannTable boltzmann_from_fitness(int n, int arity, const std::vector<double>& fitness,
                                      double temperature);

BoltzmannTable enumerate_boltzmann(const GeneratorSet& gs, const FitnessSpec& spec, int n,
                                   double temperature, int guard = kDefaultEnumerationGuard);

// Same, for an arbitrary objective; used for mock landscapes.
BoltzmannTable enumerate_boltzmann(int n, int arity, double temperature,
                                   const std::function<double(WordView)>& objective,
                                   int guard = kDefaultEnumerationGuard);

MarginalSet marginals(const BoltzmannTable& table);

struct ScatterPoint {
  std::uint64_t index;
  double p_a;
  double p_b;
  double fitness_a;
  double fitness_b;
};

std::vector<ScatterPoint> pairwise_fitness_scatter(const GeneratorSet& gs, const FitnessSpec& a,
                                                   const FitnessSpec& b, int n,
                                                   double temperature = 1.0,
                                                   int guard = kDefaultEnumerationGuard);

// log(sum exp(v))
double log_sum_exp(const std::vector<double>& v);

}  // namespace braidopt

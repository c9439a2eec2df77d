#pragma once

#include <cstddef>
#include <string>

#include "braidopt/braid.hpp"

namespace braidopt {

enum class FitnessVariant {
  kPlain,       // f: raw length
  kEffective,   // f-hat: effective (freely reduced) length
  kPrefixBest,  // f-bar: best f over all prefixes
};

enum class Recoding { kNone, kTypeI, kTypeII };

struct FitnessSpec {
  FitnessVariant variant = FitnessVariant::kPlain;
  double lambda = 0.0;
  Recoding recoding = Recoding::kNone;

  // 0 <= lambda < 1; recoding requires kPrefixBest.
  void validate() const;
};

struct BraidEvaluation {
  double fitness = 0.0;
  double epsilon = 0.0;
  std::size_t used_length = 0;
  // Only set by the prefix-best variant.
  std::size_t best_prefix_len = 0;
  BraidWord reduced_prefix;
};

// (1 - lambda) / (1 + eps) + lambda / l
inline double fitness_value(double epsilon, std::size_t length, double lambda) {
  return (1.0 - lambda) / (1.0 + epsilon) + lambda / static_cast<double>(length);
}

BraidEvaluation eval_plain(const GeneratorSet& gs, WordView w, double lambda);
BraidEvaluation eval_effective(const GeneratorSet& gs, WordView w, double lambda);

// Evaluates every prefix incrementally; ties go to the shortest prefix.
BraidEvaluation eval_prefix_best(const GeneratorSet& gs, WordView w, double lambda);

BraidEvaluation evaluate(const GeneratorSet& gs, const FitnessSpec& spec, WordView w);

// Fitness only, without the allocations evaluate() makes. Symbols are not
// range-checked.
double fitness_of(const GeneratorSet& gs, const FitnessSpec& spec, WordView w);

// Moves the reduced best prefix to the front of the word. TYPE_I keeps the
// original symbols behind it; TYPE_II fills with the reversed reduced prefix,
// then falls back to the original symbols if the prefix is too short to cover
// the tail. Throws DegenerateRecode when the best prefix reduces to nothing.
BraidWord recode(WordView w, const BraidEvaluation& ev, Recoding mode);

// (log10(1/eps))^3.97, the Solovay-Kitaev length scaling. eps in (0, 1).
double sk_length_estimate(double epsilon);

std::string to_string(FitnessVariant v);
std::string to_string(Recoding r);

}  // namespace braidopt

#include "braidopt/fitness.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "braidopt/errors.hpp"

namespace braidopt {

void FitnessSpec::validate() const {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in [0, 1)");
  if (recoding != Recoding::kNone && variant != FitnessVariant::kPrefixBest)
    throw std::invalid_argument("recoding requires the prefix-best fitness");
}

namespace {

void require_nonempty(WordView w) {
  if (w.empty()) throw DegenerateInput("cannot evaluate an empty braid word");
}

// Free-reduced length without heap traffic for the usual word sizes.
std::size_t reduced_length(const GeneratorSet& gs, WordView w) {
  constexpr std::size_t kInline = 512;
  if (w.size() > kInline) return effective_length(gs, w);
  std::array<Symbol, kInline> stack;
  std::size_t top = 0;
  for (Symbol s : w) {
    if (top > 0 && stack[top - 1] == gs.inverse(s))
      --top;
    else
      stack[top++] = s;
  }
  return top;
}

Matrix2 product_unchecked(const GeneratorSet& gs, WordView w) {
  Matrix2 acc = Matrix2::identity();
  for (Symbol s : w) acc = acc * gs.matrix(s);
  return acc;
}

}  // namespace

BraidEvaluation eval_plain(const GeneratorSet& gs, WordView w, double lambda) {
  require_nonempty(w);
  BraidEvaluation ev;
  ev.epsilon = braid_error(braid_product(gs, w), gs.target());
  ev.used_length = w.size();
  ev.fitness = fitness_value(ev.epsilon, ev.used_length, lambda);
  return ev;
}

BraidEvaluation eval_effective(const GeneratorSet& gs, WordView w, double lambda) {
  require_nonempty(w);
  BraidEvaluation ev;
  ev.epsilon = braid_error(braid_product(gs, w), gs.target());
  ev.used_length = std::max<std::size_t>(reduced_length(gs, w), 1);
  ev.fitness = fitness_value(ev.epsilon, ev.used_length, lambda);
  return ev;
}

BraidEvaluation eval_prefix_best(const GeneratorSet& gs, WordView w, double lambda) {
  require_nonempty(w);
  validate(gs, w);
  BraidEvaluation ev;
  ev.fitness = -1.0;
  Matrix2 acc = Matrix2::identity();
  for (std::size_t k = 0; k < w.size(); ++k) {
    acc = acc * gs.matrix(w[k]);
    const double eps = braid_error(acc, gs.target());
    const double f = fitness_value(eps, k + 1, lambda);
    if (f > ev.fitness) {
      ev.fitness = f;
      ev.epsilon = eps;
      ev.best_prefix_len = k + 1;
    }
  }
  ev.used_length = ev.best_prefix_len;
  ev.reduced_prefix = free_reduce(gs, w.first(ev.best_prefix_len));
  return ev;
}

BraidEvaluation evaluate(const GeneratorSet& gs, const FitnessSpec& spec, WordView w) {
  switch (spec.variant) {
    case FitnessVariant::kPlain:
      return eval_plain(gs, w, spec.lambda);
    case FitnessVariant::kEffective:
      return eval_effective(gs, w, spec.lambda);
    case FitnessVariant::kPrefixBest:
      return eval_prefix_best(gs, w, spec.lambda);
  }
  throw std::logic_error("unknown fitness variant");
}

double fitness_of(const GeneratorSet& gs, const FitnessSpec& spec, WordView w) {
  require_nonempty(w);
  switch (spec.variant) {
    case FitnessVariant::kPlain:
      return fitness_value(braid_error(product_unchecked(gs, w), gs.target()), w.size(),
                           spec.lambda);
    case FitnessVariant::kEffective:
      return fitness_value(braid_error(product_unchecked(gs, w), gs.target()),
                           std::max<std::size_t>(reduced_length(gs, w), 1), spec.lambda);
    case FitnessVariant::kPrefixBest: {
      double best = -1.0;
      Matrix2 acc = Matrix2::identity();
      for (std::size_t k = 0; k < w.size(); ++k) {
        acc = acc * gs.matrix(w[k]);
        best = std::max(best, fitness_value(braid_error(acc, gs.target()), k + 1, spec.lambda));
      }
      return best;
    }
  }
  throw std::logic_error("unknown fitness variant");
}

BraidWord recode(WordView w, const BraidEvaluation& ev, Recoding mode) {
  const std::size_t n = w.size();
  const std::size_t m = ev.reduced_prefix.size();
  if (m == 0) throw DegenerateRecode("best prefix reduces to the identity");
  if (m > n) throw std::invalid_argument("reduced prefix longer than the word");
  BraidWord out(w.begin(), w.end());
  std::copy(ev.reduced_prefix.begin(), ev.reduced_prefix.end(), out.begin());
  if (mode == Recoding::kTypeII) {
    const std::size_t fill = std::min(n - m, m);
    for (std::size_t k = 0; k < fill; ++k) out[m + k] = ev.reduced_prefix[m - 1 - k];
  } else if (mode != Recoding::kTypeI) {
    throw std::invalid_argument("recode needs TYPE_I or TYPE_II");
  }
  return out;
}

double sk_length_estimate(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("Solovay-Kitaev estimate needs 0 < epsilon < 1");
  return std::pow(std::log10(1.0 / epsilon), 3.97);
}

std::string to_string(FitnessVariant v) {
  switch (v) {
    case FitnessVariant::kPlain: return "f";
    case FitnessVariant::kEffective: return "f_hat";
    case FitnessVariant::kPrefixBest: return "f_bar";
  }
  return "?";
}

std::string to_string(Recoding r) {
  switch (r) {
    case Recoding::kNone: return "none";
    case Recoding::kTypeI: return "type_I";
    case Recoding::kTypeII: return "type_II";
  }
  return "?";
}

}  // namespace braidopt

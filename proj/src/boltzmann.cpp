#include "braidopt/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "braidopt/errors.hpp"

namespace braidopt {

double BoltzmannTable::probability(std::size_t index) const {
  return std::exp(log_weights.at(index) - log_z);
}

std::vector<double> BoltzmannTable::probabilities() const {
  std::vector<double> p(log_weights.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::exp(log_weights[k] - log_z);
  return p;
}

std::vector<double> MarginalSet::position_average() const {
  std::vector<double> avg(arity, 0.0);
  for (const auto& row : univariate)
    for (int a = 0; a < arity; ++a) avg[a] += row[a];
  for (auto& v : avg) v /= n;
  return avg;
}

std::uint64_t word_count(int n, int arity) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) {
    if (c > std::numeric_limits<std::uint64_t>::max() / arity)
      throw EnumerationGuard("word space overflows 64 bits");
    c *= arity;
  }
  return c;
}

BraidWord word_from_index(std::uint64_t index, int n, int arity) {
  BraidWord w(n);
  for (int k = 0; k < n; ++k) {
    w[k] = static_cast<Symbol>(index % arity);
    index /= arity;
  }
  return w;
}

std::uint64_t index_from_word(WordView w, int arity) {
  std::uint64_t idx = 0;
  for (std::size_t k = w.size(); k-- > 0;) idx = idx * arity + w[k];
  return idx;
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

namespace {

void check_guard(int n, int arity, int guard) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > guard) {
    const double words = std::pow(static_cast<double>(arity), n);
    throw EnumerationGuard("refusing to enumerate n = " + std::to_string(n) + " (guard " +
                           std::to_string(guard) + "): " + std::to_string(words) +
                           " words would need ~" + std::to_string(words * 8.0 / 1e9) +
                           " GB for the weight table alone; raise the guard explicitly");
  }
}

// Depth-first walk over the prefix tree so each prefix product is computed
// once.
class FitnessEnumerator {
 public:
  FitnessEnumerator(const GeneratorSet& gs, const FitnessSpec& spec, int n)
      : gs_(gs), spec_(spec), n_(n), arity_(gs.arity()), out_(word_count(n, gs.arity())) {
    stack_.resize(n);
    stride_.resize(n);
    std::uint64_t s = 1;
    for (int k = 0; k < n; ++k, s *= arity_) stride_[k] = s;
  }

  std::vector<double> run() {
    descend(0, Matrix2::identity(), 0, -1.0, 0);
    return std::move(out_);
  }

 private:
  void descend(int depth, const Matrix2& acc, std::uint64_t index, double prefix_best,
               std::size_t top) {
    for (int a = 0; a < arity_; ++a) {
      const auto s = static_cast<Symbol>(a);
      const Matrix2 next = acc * gs_.matrix(s);
      const std::uint64_t idx = index + stride_[depth] * a;

      double best = prefix_best;
      if (spec_.variant == FitnessVariant::kPrefixBest)
        best = std::max(best, fitness_value(braid_error(next, gs_.target()), depth + 1,
                                            spec_.lambda));

      std::size_t new_top = top;
      Symbol popped = 0;
      bool cancelled = false;
      if (spec_.variant == FitnessVariant::kEffective) {
        if (top > 0 && stack_[top - 1] == gs_.inverse(s)) {
          popped = stack_[top - 1];
          cancelled = true;
          new_top = top - 1;
        } else {
          stack_[top] = s;
          new_top = top + 1;
        }
      }

      if (depth + 1 == n_) {
        out_[idx] = leaf(next, best, new_top);
      } else {
        descend(depth + 1, next, idx, best, new_top);
      }
      if (cancelled) stack_[top - 1] = popped;
    }
  }

  double leaf(const Matrix2& b, double prefix_best, std::size_t reduced) const {
    switch (spec_.variant) {
      case FitnessVariant::kPlain:
        return fitness_value(braid_error(b, gs_.target()), n_, spec_.lambda);
      case FitnessVariant::kEffective:
        return fitness_value(braid_error(b, gs_.target()), std::max<std::size_t>(reduced, 1),
                             spec_.lambda);
      case FitnessVariant::kPrefixBest:
        return prefix_best;
    }
    return 0.0;
  }

  const GeneratorSet& gs_;
  const FitnessSpec& spec_;
  int n_;
  int arity_;
  std::vector<double> out_;
  std::vector<Symbol> stack_;
  std::vector<std::uint64_t> stride_;
};

}  // namespace

std::vector<double> enumerate_fitness(const GeneratorSet& gs, const FitnessSpec& spec, int n,
                                      int guard) {
  spec.validate();
  check_guard(n, gs.arity(), guard);
  return FitnessEnumerator(gs, spec, n).run();
}

BoltzmannTable boltzmann_from_fitness(int n, int arity, const std::vector<double>& fitness,
                                      double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (fitness.size() != word_count(n, arity))
    throw std::invalid_argument("fitness table size does not match arity^n");
  BoltzmannTable t;
  t.n = n;
  t.arity = arity;
  t.temperature = temperature;
  t.log_weights.resize(fitness.size());
  for (std::size_t k = 0; k < fitness.size(); ++k) t.log_weights[k] = fitness[k] / temperature;
  t.log_z = log_sum_exp(t.log_weights);
  return t;
}

BoltzmannTable enumerate_boltzmann(const GeneratorSet& gs, const FitnessSpec& spec, int n,
                                   double temperature, int guard) {
  return boltzmann_from_fitness(n, gs.arity(), enumerate_fitness(gs, spec, n, guard),
                                temperature);
}

BoltzmannTable enumerate_boltzmann(int n, int arity, double temperature,
                                   const std::function<double(WordView)>& objective, int guard) {
  check_guard(n, arity, guard);
  const std::uint64_t count = word_count(n, arity);
  std::vector<double> fitness(count);
  for (std::uint64_t k = 0; k < count; ++k) fitness[k] = objective(word_from_index(k, n, arity));
  return boltzmann_from_fitness(n, arity, fitness, temperature);
}

MarginalSet marginals(const BoltzmannTable& table) {
  const int n = table.n;
  const int q = table.arity;
  MarginalSet m;
  m.n = n;
  m.arity = q;
  m.univariate.assign(n, std::vector<double>(q, 0.0));
  m.bivariate.assign(n, std::vector<std::vector<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.bivariate[i][j].assign(q * q, 0.0);

  std::vector<int> digits(n);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const double p = std::exp(table.log_weights[idx] - table.log_z);
    std::size_t rest = idx;
    for (int k = 0; k < n; ++k) {
      digits[k] = static_cast<int>(rest % q);
      rest /= q;
    }
    for (int i = 0; i < n; ++i) {
      m.univariate[i][digits[i]] += p;
      auto& row = m.bivariate[i];
      const int base = digits[i] * q;
      for (int j = i + 1; j < n; ++j) row[j][base + digits[j]] += p;
    }
  }

  m.mutual_info.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& joint = m.bivariate[i][j];
      double mi = 0.0;
      for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
          const double pab = joint[a * q + b];
          if (pab <= 0.0) continue;
          mi += pab * std::log2(pab / (m.univariate[i][a] * m.univariate[j][b]));
        }
      }
      m.mutual_info[i][j] = m.mutual_info[j][i] = std::max(mi, 0.0);  // rounding can go just below 0
    }
  }
  return m;
}

std::vector<ScatterPoint> pairwise_fitness_scatter(const GeneratorSet& gs, const FitnessSpec& a,
                                                   const FitnessSpec& b, int n,
                                                   double temperature, int guard) {
  const auto fa = enumerate_fitness(gs, a, n, guard);
  const auto fb = enumerate_fitness(gs, b, n, guard);
  const auto ta = boltzmann_from_fitness(n, gs.arity(), fa, temperature);
  const auto tb = boltzmann_from_fitness(n, gs.arity(), fb, temperature);
  std::vector<ScatterPoint> out(fa.size());
  for (std::size_t k = 0; k < fa.size(); ++k)
    out[k] = {k, ta.probability(k), tb.probability(k), fa[k], fb[k]};
  return out;
}

}  // namespace braidopt

#include "braidopt/eda.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "braidopt/rng.hpp"

namespace braidopt {

// ---------------------------------------------------------------- variants

int Variant::id() const {
  validate();
  return (((local * 4 + function) * 4 + lambda) * 3 + sampling) * 3 + model;
}

Variant Variant::from_id(int id) {
  if (id < 0 || id >= kCount) throw std::out_of_range("variant id out of range");
  Variant v;
  v.model = id % 3;
  id /= 3;
  v.sampling = id % 3;
  id /= 3;
  v.lambda = id % 4;
  id /= 4;
  v.function = id % 4;
  v.local = id / 4;
  return v;
}

namespace {
constexpr const char* kAxisDomains =
    "expected five integers 'L tf tl ts pm' with L in {0,1} (local optimizer), tf in {0..3} "
    "(0 f, 1 f-bar, 2 f-bar + recoding I, 3 f-bar + recoding II), tl in {0..3} (lambda 0, "
    "0.01, 0.05, 0.1), ts in {0..2} (0 full, 1 partial I, 2 partial II), pm in {0..2} "
    "(0 univariate, 1 Markov, 2 tree)";
}

void Variant::validate() const {
  if (local < 0 || local > 1 || function < 0 || function > 3 || lambda < 0 || lambda > 3 ||
      sampling < 0 || sampling > 2 || model < 0 || model > 2)
    throw std::invalid_argument(std::string("invalid variant: ") + kAxisDomains);
}

Variant Variant::parse(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<int> v;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw std::invalid_argument("invalid variant '" + text + "': " + kAxisDomains);
    v.push_back(x);
  }
  if (v.size() != 5) throw std::invalid_argument("invalid variant '" + text + "': " + kAxisDomains);
  Variant out{v[0], v[1], v[2], v[3], v[4]};
  out.validate();
  return out;
}

std::string Variant::to_string() const {
  std::ostringstream os;
  os << local << ' ' << function << ' ' << lambda << ' ' << sampling << ' ' << model;
  return os.str();
}

FitnessSpec fitness_spec(FunctionMode mode, double lambda) {
  FitnessSpec s;
  s.lambda = lambda;
  switch (mode) {
    case FunctionMode::kPlain: s.variant = FitnessVariant::kPlain; break;
    case FunctionMode::kPrefixBest: s.variant = FitnessVariant::kPrefixBest; break;
    case FunctionMode::kPrefixBestRecodeI:
      s.variant = FitnessVariant::kPrefixBest;
      s.recoding = Recoding::kTypeI;
      break;
    case FunctionMode::kPrefixBestRecodeII:
      s.variant = FitnessVariant::kPrefixBest;
      s.recoding = Recoding::kTypeII;
      break;
  }
  return s;
}

EdaConfig EdaConfig::from_variant(const Variant& v, int n, BudgetPreset preset,
                                  std::uint64_t seed) {
  v.validate();
  EdaConfig c;
  c.n = n;
  c.use_local = v.local == 1;
  c.function_mode = static_cast<FunctionMode>(v.function);
  c.lambda_index = v.lambda;
  c.sampling_mode = static_cast<SamplingMode>(v.sampling);
  c.model_type = static_cast<ModelType>(v.model);
  c.seed = seed;
  if (preset == BudgetPreset::kPaper) {
    c.population = c.use_local ? 100 * n : 10000;
    c.generations = c.use_local ? 100 : 15 * n;
  } else {
    c.population = c.use_local ? 20 * n : 1000;
    c.generations = c.use_local ? 30 : 3 * n;
  }
  return c;
}

Variant EdaConfig::variant() const {
  return {use_local ? 1 : 0, static_cast<int>(function_mode), lambda_index,
          static_cast<int>(sampling_mode), static_cast<int>(model_type)};
}

std::size_t EdaConfig::selected_count() const {
  return static_cast<std::size_t>(std::ceil(truncation * population - 1e-9));
}

void EdaConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (population < 1) throw std::invalid_argument("population must be positive");
  if (generations < 1) throw std::invalid_argument("generations must be positive");
  if (!(truncation > 0.0 && truncation <= 1.0))
    throw std::invalid_argument("truncation must lie in (0, 1]");
  if (truncation * population < 1.0 - 1e-9)
    throw std::invalid_argument("truncation * population must be at least 1");
  if (lambda_index < 0 || lambda_index > 3) throw std::invalid_argument("lambda index out of range");
  if (workers < 1) throw std::invalid_argument("workers must be positive");
  variant().validate();
}

bool same_outcome(const RunRecord& a, const RunRecord& b) {
  return a.method == b.method && a.config.variant() == b.config.variant() &&
         a.config.n == b.config.n && a.config.seed == b.config.seed &&
         a.generations == b.generations && a.best_word == b.best_word &&
         a.best_braid == b.best_braid && a.best_eval.fitness == b.best_eval.fitness &&
         a.best_eval.epsilon == b.best_eval.epsilon &&
         a.best_eval.used_length == b.best_eval.used_length &&
         a.total_evaluations == b.total_evaluations && a.budget_exhausted == b.budget_exhausted;
}

// --------------------------------------------------------------- selection

std::vector<std::size_t> truncation_select(const std::vector<double>& fitness, double fraction) {
  if (fitness.empty()) throw std::invalid_argument("cannot select from an empty population");
  const auto n = fitness.size();
  auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](std::size_t a, std::size_t b) {
    if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
    return a < b;
  });
  idx.resize(k);
  return idx;
}

// ------------------------------------------------------------------ greedy

Neighborhood::Neighborhood(const GeneratorSet& gs, const FitnessSpec& spec, WordView w)
    : gs_(gs), spec_(spec), w_(w) {
  const std::size_t n = w.size();
  prefix_.resize(n + 1);
  prefix_[0] = Matrix2::identity();
  for (std::size_t k = 0; k < n; ++k) prefix_[k + 1] = prefix_[k] * gs.matrix(w[k]);
  if (spec.variant == FitnessVariant::kPrefixBest) {
    prefix_best_.assign(n + 1, -1.0);
    for (std::size_t k = 0; k < n; ++k)
      prefix_best_[k + 1] = std::max(
          prefix_best_[k], fitness_value(braid_error(prefix_[k + 1], gs.target()), k + 1, spec.lambda));
  } else {
    suffix_.resize(n + 1);
    suffix_[n] = Matrix2::identity();
    for (std::size_t k = n; k-- > 0;) suffix_[k] = gs.matrix(w[k]) * suffix_[k + 1];
  }
  if (spec.variant == FitnessVariant::kEffective) scratch_.resize(n);
}

double Neighborhood::fitness_with(std::size_t pos, Symbol s) const {
  const std::size_t n = w_.size();
  const auto& target = gs_.target();
  switch (spec_.variant) {
    case FitnessVariant::kPlain:
      return fitness_value(braid_error(prefix_[pos] * gs_.matrix(s) * suffix_[pos + 1], target), n,
                           spec_.lambda);
    case FitnessVariant::kEffective: {
      std::size_t top = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const Symbol x = k == pos ? s : w_[k];
        if (top > 0 && scratch_[top - 1] == gs_.inverse(x))
          --top;
        else
          scratch_[top++] = x;
      }
      return fitness_value(braid_error(prefix_[pos] * gs_.matrix(s) * suffix_[pos + 1], target),
                           std::max<std::size_t>(top, 1), spec_.lambda);
    }
    case FitnessVariant::kPrefixBest: {
      double best = prefix_best_[pos];
      Matrix2 acc = prefix_[pos] * gs_.matrix(s);
      best = std::max(best, fitness_value(braid_error(acc, target), pos + 1, spec_.lambda));
      for (std::size_t k = pos + 1; k < n; ++k) {
        acc = acc * gs_.matrix(w_[k]);
        best = std::max(best, fitness_value(braid_error(acc, target), k + 1, spec_.lambda));
      }
      return best;
    }
  }
  return 0.0;
}

namespace {
// Incremental and direct products differ in the last bits, and f_bar has
// many exact ties; a move must beat the current value by more than this.
constexpr double kImproveMargin = 1e-13;
}  // namespace

GreedyResult greedy_improve(const GeneratorSet& gs, const FitnessSpec& spec, WordView w) {
  validate(gs, w);
  GreedyResult r;
  r.word.assign(w.begin(), w.end());
  double current = fitness_of(gs, spec, r.word);
  const auto arity = static_cast<Symbol>(gs.arity());
  for (;;) {
    const Neighborhood nb(gs, spec, r.word);
    double best = current;
    std::size_t best_pos = 0;
    Symbol best_sym = 0;
    bool improved = false;
    for (std::size_t pos = 0; pos < r.word.size(); ++pos) {
      for (Symbol s = 0; s < arity; ++s) {
        if (s == r.word[pos]) continue;
        const double f = nb.fitness_with(pos, s);
        ++r.evaluations;
        if (f > best + kImproveMargin) {
          best = f;
          best_pos = pos;
          best_sym = s;
          improved = true;
        }
      }
    }
    if (!improved) break;
    r.word[best_pos] = best_sym;
    // Keep the value that won so accepted values strictly increase.
    current = best;
  }
  r.eval = evaluate(gs, spec, r.word);
  return r;
}

BraidWord realized_braid(const FitnessSpec& spec, WordView w, const BraidEvaluation& ev) {
  if (spec.variant == FitnessVariant::kPrefixBest) return ev.reduced_prefix;
  return BraidWord(w.begin(), w.end());
}

// -------------------------------------------------------------------- loop

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const auto w = std::min<std::size_t>(workers, count);
  std::vector<std::jthread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += w) fn(i);
    });
  }
}

BraidWord random_word(Rng& rng, int n, int arity) {
  BraidWord w(n);
  for (auto& s : w) s = static_cast<Symbol>(uniform_below(rng, arity));
  return w;
}

struct Evaluated {
  BraidWord word;  // genotype after local search and recoding
  BraidWord pre_recode;
  BraidEvaluation eval;
  std::uint64_t cost = 0;
};

// Stream tags under the run seed.
enum StreamTag : std::uint64_t { kInitStream = 0, kSampleStream = 1, kBaselineStream = 2 };

}  // namespace

RunRecord run_eda(const EdaConfig& config, const GeneratorSet& gs) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const FitnessSpec spec = config.fitness();
  const auto pop_size = static_cast<std::size_t>(config.population);

  RunRecord rec;
  rec.method = "eda";
  rec.config = config;
  rec.best_eval.fitness = -std::numeric_limits<double>::infinity();

  std::vector<BraidWord> population(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    Rng rng = make_stream(config.seed, {kInitStream, i});
    population[i] = random_word(rng, config.n, gs.arity());
  }

  std::vector<Evaluated> evaluated(pop_size);
  std::vector<double> fitness(pop_size);
  PartialMode partial = config.sampling_mode == SamplingMode::kPartialI ? PartialMode::kTypeI
                                                                        : PartialMode::kTypeII;

  for (int gen = 0; gen < config.generations; ++gen) {
    parallel_for(pop_size, config.workers, [&](std::size_t i) {
      Evaluated& e = evaluated[i];
      if (config.use_local) {
        auto g = greedy_improve(gs, spec, population[i]);
        e.word = std::move(g.word);
        e.eval = std::move(g.eval);
        e.cost = 1 + g.evaluations;
      } else {
        e.word = population[i];
        e.eval = evaluate(gs, spec, e.word);
        e.cost = 1;
      }
      e.pre_recode = e.word;
      if (spec.recoding != Recoding::kNone && !e.eval.reduced_prefix.empty())
        e.word = recode(e.word, e.eval, spec.recoding);
    });

    // Charge evaluations in index order so truncation is worker-independent.
    std::size_t counted = pop_size;
    for (std::size_t i = 0; i < pop_size; ++i) {
      if (config.max_evaluations &&
          rec.total_evaluations + evaluated[i].cost > *config.max_evaluations) {
        counted = i;
        rec.budget_exhausted = true;
        break;
      }
      rec.total_evaluations += evaluated[i].cost;
    }
    if (counted == 0) break;

    GenerationStats st;
    st.generation = gen;
    std::size_t best_i = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < counted; ++i) {
      fitness[i] = evaluated[i].eval.fitness;
      sum += fitness[i];
      if (fitness[i] > fitness[best_i]) best_i = i;
    }
    const Evaluated& gb = evaluated[best_i];
    if (gb.eval.fitness > rec.best_eval.fitness) {
      rec.best_eval = gb.eval;
      rec.best_word = gb.pre_recode;
      rec.best_braid = realized_braid(spec, gb.pre_recode, gb.eval);
    }
    st.best_fitness = gb.eval.fitness;
    st.mean_fitness = sum / static_cast<double>(counted);
    st.best_epsilon = gb.eval.epsilon;
    st.best_length = gb.eval.used_length;
    st.incumbent_fitness = rec.best_eval.fitness;
    st.evaluations = rec.total_evaluations;
    rec.generations.push_back(st);

    if (rec.budget_exhausted || gen + 1 == config.generations) break;

    for (std::size_t i = 0; i < pop_size; ++i) population[i] = std::move(evaluated[i].word);

    const auto chosen = truncation_select(fitness, config.truncation);
    Sample selected;
    selected.reserve(chosen.size());
    for (std::size_t i : chosen) selected.push_back(population[i]);
    const ProbModel model = learn_model(config.model_type, selected, gs.arity());

    std::vector<BraidWord> next(pop_size);
    parallel_for(pop_size, config.workers, [&](std::size_t i) {
      Rng rng = make_stream(config.seed, {kSampleStream, static_cast<std::uint64_t>(gen), i});
      if (config.sampling_mode == SamplingMode::kFull) {
        next[i] = sample_one(model, rng);
      } else {
        const auto base = uniform_below(rng, pop_size);
        next[i] = sample_partial(model, population[base], partial, rng);
      }
    });
    population = std::move(next);
  }

  rec.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// --------------------------------------------------------------- baselines

namespace {

RunRecord baseline(const BaselineConfig& bc, const GeneratorSet& gs, bool local) {
  if (bc.draws < 1) throw std::invalid_argument("baselines need at least one draw");
  const auto t0 = std::chrono::steady_clock::now();
  const FitnessSpec spec = fitness_spec(bc.function_mode, bc.lambda);
  spec.validate();

  RunRecord rec;
  rec.method = local ? "greedy" : "random";
  rec.config.n = bc.n;
  rec.config.function_mode = bc.function_mode;
  rec.config.lambda_index = static_cast<int>(
      std::find(kLambdaValues.begin(), kLambdaValues.end(), bc.lambda) - kLambdaValues.begin());
  if (rec.config.lambda_index > 3) rec.config.lambda_index = 0;
  rec.config.use_local = local;
  rec.config.population = bc.draws;
  rec.config.generations = 1;
  rec.config.seed = bc.seed;
  rec.best_eval.fitness = -std::numeric_limits<double>::infinity();

  double sum = 0.0;
  for (int d = 0; d < bc.draws; ++d) {
    Rng rng = make_stream(bc.seed, {kBaselineStream, static_cast<std::uint64_t>(d)});
    BraidWord w = random_word(rng, bc.n, gs.arity());
    BraidEvaluation ev;
    rec.total_evaluations += 1;
    if (local) {
      auto g = greedy_improve(gs, spec, w);
      rec.total_evaluations += g.evaluations;
      w = std::move(g.word);
      ev = std::move(g.eval);
    } else {
      ev = evaluate(gs, spec, w);
    }
    sum += ev.fitness;
    if (ev.fitness > rec.best_eval.fitness) {
      rec.best_eval = ev;
      rec.best_word = w;
    }
  }
  rec.best_braid = realized_braid(spec, rec.best_word, rec.best_eval);
  GenerationStats st;
  st.best_fitness = st.incumbent_fitness = rec.best_eval.fitness;
  st.best_epsilon = rec.best_eval.epsilon;
  st.best_length = rec.best_eval.used_length;
  st.evaluations = rec.total_evaluations;
  st.mean_fitness = sum / bc.draws;
  rec.generations.push_back(st);
  rec.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

RunRecord random_search(const BaselineConfig& config, const GeneratorSet& gs) {
  return baseline(config, gs, false);
}

RunRecord greedy_search(const BaselineConfig& config, const GeneratorSet& gs) {
  return baseline(config, gs, true);
}

std::string to_string(FunctionMode m) {
  switch (m) {
    case FunctionMode::kPlain: return "f";
    case FunctionMode::kPrefixBest: return "f_bar";
    case FunctionMode::kPrefixBestRecodeI: return "f_bar_recode_I";
    case FunctionMode::kPrefixBestRecodeII: return "f_bar_recode_II";
  }
  return "?";
}

std::string to_string(SamplingMode m) {
  switch (m) {
    case SamplingMode::kFull: return "full";
    case SamplingMode::kPartialI: return "partial_I";
    case SamplingMode::kPartialII: return "partial_II";
  }
  return "?";
}

}  // namespace braidopt

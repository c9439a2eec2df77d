// Acceptance suite. One PASS/FAIL line per criterion, with the runtime
// against its limit. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "braidopt/boltzmann.hpp"
#include "braidopt/braid.hpp"
#include "braidopt/eda.hpp"
#include "braidopt/fitness.hpp"
#include "braidopt/harness.hpp"
#include "braidopt/models.hpp"
#include "braidopt/rng.hpp"

namespace {

using namespace braidopt;

// Tolerances.
constexpr double kUnitaryTol = 1e-12;
constexpr double kAdvantageMin = 9.0;
constexpr int kOracleRuns = 100;
constexpr int kOracleRequired = 95;
constexpr double kOracleFitnessTol = 1e-12;
constexpr int kOrderingSeeds = 30;
constexpr double kLearnFixpointSigmas = 5.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= limit_seconds;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  char buf[96];
  std::snprintf(buf, sizeof buf, " [%.2f s, limit %.0f s%s]", secs, limit_seconds,
                in_time ? "" : ", TOO SLOW");
  std::cout << (ok ? "PASS " : "FAIL ") << name << buf << '\n' << o.detail << std::flush;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ------------------------------------------------------------ criterion 1, 2

std::vector<BraidCheck> table_checks() {
  return verify_published_braids(
      fibonacci_generators(),
      load_published_braids(std::string(BRAIDOPT_DATA_DIR) + "/table1_braids.json"));
}

Outcome criterion_tables() {
  Outcome o;
  const auto checks = table_checks();
  o.pass = checks.size() == 5;
  for (const auto& c : checks) {
    o.pass = o.pass && c.pass();
    std::ostringstream s;
    s.precision(10);
    s << "    n=" << c.row.n << " eps=" << c.epsilon << " (|d|=" << std::abs(c.epsilon - c.row.epsilon)
      << " tol " << c.row.epsilon_tolerance << ") digits=" << c.digits_ok << " l=" << c.effective_length
      << " sk=" << c.sk_estimate << " (table " << c.row.sk_estimate << ")"
      << (c.pass() ? "" : "  <-- mismatch") << '\n';
    o.detail += s.str();
  }
  return o;
}

Outcome criterion_advantage() {
  for (const auto& c : table_checks())
    if (c.row.n == 100) {
      const double adv = c.length_advantage();
      return {adv >= kAdvantageMin, "    n=100 sk/l = " + fmt("%.4f", adv) + " (need >= 9.0)\n"};
    }
  return {false, "    n=100 row missing\n"};
}

// --------------------------------------------------------------- criterion 3

Outcome criterion_boltzmann() {
  const auto& gs = fibonacci_generators();
  constexpr int n = 10;
  constexpr double lambda = 0.01, temperature = 1.0;
  const char* names[] = {"f", "f_hat", "f_bar"};
  const FitnessVariant variants[] = {FitnessVariant::kPlain, FitnessVariant::kEffective,
                                     FitnessVariant::kPrefixBest};
  const char* symbols[] = {"s1", "s2", "s1^-1", "s2^-1"};
  Outcome o;
  bool count_ok = true, argmax_ok = true, mi_ok = true;
  std::vector<std::vector<double>> fit(3);
  for (int v = 0; v < 3; ++v) {
    FitnessSpec spec{variants[v], lambda, Recoding::kNone};
    fit[v] = enumerate_fitness(gs, spec, n);
    const auto table = boltzmann_from_fitness(n, gs.arity(), fit[v], temperature);
    const auto m = marginals(table);
    const auto avg = m.position_average();
    const auto best = std::max_element(avg.begin(), avg.end()) - avg.begin();
    const double adj = mean_adjacent_mi(m), non = mean_non_adjacent_mi(m);
    count_ok = count_ok && table.size() == 1048576u;
    argmax_ok = argmax_ok && best == 2;
    for (int a = 0; a < 4; ++a)
      if (a != 2) argmax_ok = argmax_ok && avg[2] > avg[a];
    mi_ok = mi_ok && adj > non;
    std::ostringstream s;
    s.precision(6);
    s << "    " << names[v] << ": words=" << table.size() << " marginals(s1,s2,s1^-1,s2^-1)=[" << avg[0]
      << ", " << avg[1] << ", " << avg[2] << ", " << avg[3] << "] argmax=" << symbols[best]
      << " MI adj=" << adj << " non-adj=" << non << '\n';
    o.detail += s.str();
  }
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < fit[0].size(); ++i)
    if (fit[2][i] < fit[0][i]) ++violations;
  const bool dom_ok = violations == 0;
  o.detail += std::string("    (a) 1048576 words: ") + (count_ok ? "ok" : "NO") + '\n';
  o.detail += std::string("    (b) s1^-1 dominates the averaged marginal: ") + (argmax_ok ? "ok" : "NO") + '\n';
  o.detail += std::string("    (c) adjacent MI > non-adjacent MI: ") + (mi_ok ? "ok" : "NO") + '\n';
  o.detail += "    (d) f_bar >= f pointwise: " + std::string(dom_ok ? "ok" : "NO") + " (" +
              std::to_string(violations) + " violations)\n";
  o.pass = count_ok && argmax_ok && mi_ok && dom_ok;
  return o;
}

// --------------------------------------------------------------- criterion 4

Outcome criterion_oracle() {
  const auto& gs = fibonacci_generators();
  constexpr int n = 6;
  const FitnessSpec spec{FitnessVariant::kPlain, 0.0, Recoding::kNone};
  const auto all = enumerate_fitness(gs, spec, n);
  const double optimum = *std::max_element(all.begin(), all.end());
  int hits = 0;
  for (int r = 0; r < kOracleRuns; ++r) {
    EdaConfig c;
    c.n = n;
    c.use_local = true;
    c.function_mode = FunctionMode::kPlain;
    c.lambda_index = 0;
    c.sampling_mode = SamplingMode::kFull;
    c.model_type = ModelType::kUnivariate;
    c.population = 2000;
    c.generations = 50;
    c.seed = derive_seed(4, {static_cast<std::uint64_t>(r)});
    const auto rec = run_eda(c, gs);
    if (rec.best_eval.fitness >= optimum - kOracleFitnessTol) ++hits;
  }
  return {hits >= kOracleRequired, "    exhaustive optimum over 4096 words f*=" + fmt("%.12f", optimum) +
                                       "; hybrid EDA reached it in " + std::to_string(hits) + "/" +
                                       std::to_string(kOracleRuns) + " runs\n"};
}

// --------------------------------------------------------------- criterion 5

Outcome criterion_ordering() {
  const auto& gs = fibonacci_generators();
  constexpr int n = 50;
  const Variant rec_variant = Variant::parse("1 3 1 2 1");
  std::vector<double> eda, greedy, random;
  for (int s = 0; s < kOrderingSeeds; ++s) {
    const auto seed = derive_seed(5, {static_cast<std::uint64_t>(s)});
    eda.push_back(run_eda(EdaConfig::from_variant(rec_variant, n, BudgetPreset::kDesk, seed), gs)
                      .best_eval.fitness);
    BaselineConfig b;
    b.n = n;
    b.seed = seed;
    greedy.push_back(greedy_search(b, gs).best_eval.fitness);
    random.push_back(random_search(b, gs).best_eval.fitness);
  }
  const double me = median(eda), mg = median(greedy), mr = median(random);
  std::ostringstream s;
  s.precision(8);
  s << "    medians over " << kOrderingSeeds << " seeds: EDA(1 3 1 2 1)=" << me << " greedy=" << mg
    << " random=" << mr << '\n';
  return {me > mg && mg > mr, s.str()};
}

// --------------------------------------------------------------- criterion 6

BraidWord random_word(Rng& rng, int n, int arity) {
  BraidWord w(n);
  for (auto& s : w) s = static_cast<Symbol>(uniform_below(rng, arity));
  return w;
}

struct Battery {
  std::string detail;
  bool pass = true;
  void check(const std::string& name, bool ok) {
    pass = pass && ok;
    detail += "    " + name + ": " + (ok ? "ok" : "FAILED") + '\n';
  }
};

Outcome criterion_properties() {
  const auto& gs = fibonacci_generators();
  Rng rng(6);
  Battery b;

  {
    bool ok = true;
    for (int t = 0; t < 2000; ++t) {
      const auto w = random_word(rng, 1 + static_cast<int>(uniform_below(rng, 60)), gs.arity());
      const auto m = braid_product(gs, w);
      const auto u = m * m.adjoint();
      ok = ok && max_abs(u - Matrix2::identity()) < kUnitaryTol * 100 &&
           std::abs(m.det() - Complex(1, 0)) < kUnitaryTol * 100;
    }
    for (const auto& g : gs.matrices())
      ok = ok && max_abs(g * g.adjoint() - Matrix2::identity()) < kUnitaryTol &&
           std::abs(g.det() - Complex(1, 0)) < kUnitaryTol;
    b.check("unitarity and unit determinant", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 2000; ++t) {
      const auto w = random_word(rng, static_cast<int>(uniform_below(rng, 40)), gs.arity());
      const auto r = free_reduce(gs, w);
      ok = ok && free_reduce(gs, r) == r && r.size() <= w.size() && (w.size() - r.size()) % 2 == 0 &&
           max_abs(braid_product(gs, r) - braid_product(gs, w)) < 1e-10;
      for (std::size_t i = 1; i < r.size(); ++i) ok = ok && r[i] != gs.inverse(r[i - 1]);
    }
    b.check("free reduction sound, idempotent, parity-preserving", ok);
  }
  {
    bool chain = true, recode_ok = true;
    for (int t = 0; t < 1000; ++t) {
      const auto w = random_word(rng, 4 + static_cast<int>(uniform_below(rng, 40)), gs.arity());
      const double lambda = kLambdaValues[uniform_below(rng, 4)];
      const auto p = eval_plain(gs, w, lambda), e = eval_effective(gs, w, lambda),
                 f = eval_prefix_best(gs, w, lambda);
      chain = chain && e.fitness >= p.fitness - 1e-15 && f.fitness >= p.fitness - 1e-15;
      if (!f.reduced_prefix.empty())
        for (auto mode : {Recoding::kTypeI, Recoding::kTypeII}) {
          const auto r = recode(w, f, mode);
          recode_ok = recode_ok && r.size() == w.size() &&
                      eval_prefix_best(gs, r, lambda).fitness >= f.fitness - 1e-12;
        }
    }
    b.check("fitness dominance f_hat >= f and f_bar >= f", chain);
    b.check("recoding never lowers f_bar", recode_ok);
  }
  {
    bool norm = true, fix = true;
    // Sum of p(x) over all 4^5 words of models learned from random data.
    Sample s;
    for (int i = 0; i < 200; ++i) s.push_back(random_word(rng, 5, gs.arity()));
    s.push_back({0, 0, 0, 0, 0});
    s.push_back({0, 0, 0, 0, 0});
    for (auto type : {ModelType::kUnivariate, ModelType::kMarkov, ModelType::kTree}) {
      const auto m = learn_model(type, s);
      double total = 0;
      for (std::uint64_t i = 0; i < word_count(5, 4); ++i)
        total += std::exp(log_likelihood(m, word_from_index(i, 5, 4)));
      norm = norm && std::abs(total - 1.0) < 1e-9;
    }
    // Fixpoint: learn on a large sample drawn from a model, recover it.
    UnivariateModel truth{3, 4, {{0.1, 0.2, 0.3, 0.4}, {0.25, 0.25, 0.25, 0.25}, {0.7, 0.1, 0.1, 0.1}}};
    constexpr std::size_t K = 100000;
    const auto sample = sample_full(ProbModel{truth}, K, rng);
    const auto learned = learn_univariate(sample);
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 4; ++a)
        fix = fix && std::abs(learned.probs[i][a] - truth.probs[i][a]) <
                         kLearnFixpointSigmas / std::sqrt(static_cast<double>(K));
    b.check("model distributions sum to 1", norm);
    b.check("learn(sample(p)) ~ p", fix);
  }
  {
    bool ok = true;
    Sample s;
    for (int i = 0; i < 100; ++i) s.push_back(random_word(rng, 12, gs.arity()));
    const auto m = learn_model(ModelType::kTree, s);
    for (int t = 0; t < 500; ++t) {
      const auto base = random_word(rng, 12, gs.arity());
      const std::size_t k = uniform_below(rng, 13);
      const auto x = sample_partial_count(m, base, k, rng);
      std::size_t diff = 0;
      for (int i = 0; i < 12; ++i) diff += x[i] != base[i];
      ok = ok && diff <= k;
    }
    b.check("partial sampling Hamming bound", ok);
  }
  {
    bool mono = true, local = true;
    for (int t = 0; t < 200; ++t) {
      const int n = 4 + static_cast<int>(uniform_below(rng, 20));
      const auto w = random_word(rng, n, gs.arity());
      const FitnessSpec spec{static_cast<FitnessVariant>(uniform_below(rng, 3)),
                             kLambdaValues[uniform_below(rng, 4)], Recoding::kNone};
      const auto g = greedy_improve(gs, spec, w);
      mono = mono && g.eval.fitness >= evaluate(gs, spec, w).fitness - 1e-15;
      auto y = g.word;
      for (int i = 0; i < n; ++i)
        for (Symbol s = 0; s < 4; ++s) {
          const Symbol keep = y[i];
          y[i] = s;
          local = local && evaluate(gs, spec, y).fitness <= g.eval.fitness + 1e-12;
          y[i] = keep;
        }
    }
    b.check("greedy monotone", mono);
    b.check("greedy result is 1-change locally optimal", local);
  }
  {
    bool ok = true;
    for (auto text : {"1 3 1 2 1", "0 2 3 1 2", "1 0 0 0 0"}) {
      const auto cfg = EdaConfig::from_variant(Variant::parse(text), 20, BudgetPreset::kDesk, 99);
      auto small = cfg;
      small.population = 200;
      small.generations = 10;
      const auto a = run_eda(small, gs), c = run_eda(small, gs);
      ok = ok && same_outcome(a, c) && record_to_jsonl(a, gs) == record_to_jsonl(c, gs);
    }
    b.check("seeded runs are bit-identical", ok);
  }
  return {b.pass, b.detail};
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  run("1 published braid table reproduces", 1, criterion_tables);
  run("2 length advantage at n=100 >= 9", 1, criterion_advantage);
  run("3 Boltzmann analysis n=10 T=1 lambda=0.01", 600, criterion_boltzmann);
  run("4 hybrid EDA reaches the exhaustive n=6 optimum", 300, criterion_oracle);
  run("5 method ordering at desk scale", 3600, criterion_ordering);
  run("6 property battery", 300, criterion_properties);
  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criterion(s) FAIL")
            << '\n';
  return failures == 0 ? 0 : 1;
}

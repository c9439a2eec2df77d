// braidopt command-line front end.
//
//   braidopt verify-tables [--data FILE]
//   braidopt boltzmann --n 10 --lambda 0.01 --function f --versus f_bar --out DIR
//   braidopt run --variant 1 3 1 2 1 --n 50 --runs 10 --seed 7 --desk --out DIR
//   braidopt run --grid --n 50 --runs 2 --out DIR
//   braidopt baselines --n 50 --runs 30 --out DIR
//   braidopt summarize --out DIR
//
// Every flag can also come from a JSON file given with --config; flags on the
// command line win.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "braidopt/braid.hpp"
#include "braidopt/errors.hpp"
#include "braidopt/harness.hpp"

namespace {

using namespace braidopt;

struct Options {
  std::string config_file;
  std::string data_file = std::string(BRAIDOPT_DATA_DIR) + "/table1_braids.json";

  std::vector<int> ns;
  std::vector<int> variant;
  bool grid = false;
  int runs = 0;
  std::uint64_t seed = 20140101;
  double lambda = 0.01;
  double temperature = 1.0;
  std::string function = "f";
  std::string versus = "f_bar";
  std::string out = "results";
  bool paper_budgets = false;
  bool desk = false;
  int workers = 1;
  int guard = kDefaultEnumerationGuard;
  int draws = 10000;
  std::optional<int> population;
  std::optional<int> generations;
  std::optional<std::uint64_t> max_evaluations;
};

FitnessSpec parse_function(const std::string& name, double lambda) {
  FitnessSpec s;
  s.lambda = lambda;
  if (name == "f")
    s.variant = FitnessVariant::kPlain;
  else if (name == "f_hat")
    s.variant = FitnessVariant::kEffective;
  else if (name == "f_bar")
    s.variant = FitnessVariant::kPrefixBest;
  else
    throw CLI::ValidationError("--function", "expected one of f, f_hat, f_bar");
  s.validate();
  return s;
}

// Fills options that were not given on the command line from the JSON file.
void apply_config_file(CLI::App& sub, Options& o) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) throw std::runtime_error("cannot read config file " + o.config_file);
  const auto j = nlohmann::json::parse(in);
  const auto unset = [&](const char* flag) {
    auto* opt = sub.get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  const auto take = [&](const char* key, const char* flag, auto& dst) {
    if (j.contains(key) && unset(flag)) j.at(key).get_to(dst);
  };
  if (j.contains("n") && unset("--n")) {
    if (j["n"].is_array())
      j["n"].get_to(o.ns);
    else
      o.ns = {j["n"].get<int>()};
  }
  take("variant", "--variant", o.variant);
  take("grid", "--grid", o.grid);
  take("runs", "--runs", o.runs);
  take("seed", "--seed", o.seed);
  take("lambda", "--lambda", o.lambda);
  take("temperature", "--temperature", o.temperature);
  take("function", "--function", o.function);
  take("versus", "--versus", o.versus);
  take("out", "--out", o.out);
  take("workers", "--workers", o.workers);
  take("guard", "--guard", o.guard);
  take("draws", "--draws", o.draws);
  take("data", "--data", o.data_file);
  if (j.contains("preset") && unset("--paper-budgets") && unset("--desk")) {
    const auto p = j["preset"].get<std::string>();
    o.paper_budgets = p == "paper";
    o.desk = p == "desk";
  }
  if (j.contains("population") && unset("--population")) o.population = j["population"].get<int>();
  if (j.contains("generations") && unset("--generations"))
    o.generations = j["generations"].get<int>();
  if (j.contains("max_evaluations") && unset("--max-evaluations"))
    o.max_evaluations = j["max_evaluations"].get<std::uint64_t>();
}

int cmd_verify_tables(const Options& o) {
  const auto& gs = fibonacci_generators();
  const auto checks = verify_published_braids(gs, load_published_braids(o.data_file));
  std::cout << format_braid_report(checks);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass();
  for (const auto& c : checks)
    if (c.error.empty() && c.raw_length != c.effective_length)
      std::cout << "note: n=" << c.row.n << " word is not freely reduced; l compared as the "
                << "effective length\n";
  std::cout << (ok ? "all rows PASS" : "some rows FAIL") << '\n';
  return ok ? 0 : 1;
}

int cmd_boltzmann(const Options& o) {
  const auto& gs = fibonacci_generators();
  const int n = o.ns.empty() ? 10 : o.ns.front();
  const auto a = parse_function(o.function, o.lambda);
  const auto b = parse_function(o.versus, o.lambda);
  const auto rep = write_boltzmann_outputs(gs, a, b, n, o.temperature, o.out, o.guard);
  std::cout << "enumerated " << rep.words << " words (n=" << n << ", T=" << o.temperature
            << ", lambda=" << o.lambda << ")\n"
            << std::setprecision(8) << "position-averaged marginals (s1, s2, s1^-1, s2^-1):";
  for (double p : rep.position_average) std::cout << ' ' << p;
  std::cout << "\nmean MI adjacent " << rep.adjacent_mi << " bits, non-adjacent "
            << rep.non_adjacent_mi << " bits\n"
            << "words with " << o.versus << " < " << o.function << ": "
            << rep.dominance_violations << '\n'
            << "wrote univariate.csv, mutual_info.csv, scatter.csv to " << o.out << '\n';
  return 0;
}

BudgetOverrides budgets(const Options& o) {
  if (o.paper_budgets && o.desk) throw CLI::ValidationError("choose --paper-budgets or --desk");
  BudgetOverrides b;
  b.preset = o.paper_budgets ? BudgetPreset::kPaper : BudgetPreset::kDesk;
  b.population = o.population;
  b.generations = o.generations;
  b.max_evaluations = o.max_evaluations;
  return b;
}

int cmd_run(const Options& o) {
  const auto& gs = fibonacci_generators();
  ExperimentGrid grid;
  grid.root_seed = o.seed;
  if (!o.ns.empty()) grid.ns = o.ns;
  grid.runs = o.runs > 0 ? o.runs : (o.paper_budgets ? 100 : 10);
  if (!o.grid) {
    if (o.variant.size() != 5)
      throw CLI::ValidationError("--variant", "give five integers L tf tl ts pm, or use --grid");
    std::string text;
    for (int x : o.variant) text += std::to_string(x) + ' ';
    grid.variants = {Variant::parse(text)};
  }
  const auto jobs = grid.jobs();
  const auto budget = budgets(o);
  ResultStore store(o.out);
  std::cerr << "running " << jobs.size() << " job(s) on " << o.workers << " worker(s)\n";
  run_jobs(
      jobs.size(), o.workers, [&](std::size_t i) { return run_eda(config_for(jobs[i], budget), gs); },
      [&](std::size_t i, const RunRecord& rec) {
        store.append(rec, gs);
        std::cerr << '[' << i + 1 << '/' << jobs.size() << "] " << jobs[i].variant.to_string()
                  << " n=" << jobs[i].n << " run=" << jobs[i].run << std::setprecision(10)
                  << " best f=" << rec.best_eval.fitness << " eps=" << rec.best_eval.epsilon
                  << '\n';
      });
  return 0;
}

int cmd_baselines(const Options& o) {
  const auto& gs = fibonacci_generators();
  const std::vector<int> ns = o.ns.empty() ? std::vector<int>{50} : o.ns;
  const int runs = o.runs > 0 ? o.runs : 100;
  ResultStore store(o.out);
  struct Item {
    BaselineConfig cfg;
    bool local;
  };
  std::vector<Item> items;
  for (int n : ns)
    for (int r = 0; r < runs; ++r) {
      BaselineConfig c;
      c.n = n;
      c.draws = o.draws;
      c.lambda = o.lambda;
      c.seed = derive_seed(o.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)});
      items.push_back({c, false});
      items.push_back({c, true});
    }
  run_jobs(
      items.size(), o.workers,
      [&](std::size_t i) {
        return items[i].local ? greedy_search(items[i].cfg, gs) : random_search(items[i].cfg, gs);
      },
      [&](std::size_t i, const RunRecord& rec) {
        store.append(rec, gs);
        std::cerr << '[' << i + 1 << '/' << items.size() << "] " << rec.method << " n="
                  << rec.config.n << std::setprecision(10) << " best f=" << rec.best_eval.fitness
                  << '\n';
      });
  return 0;
}

int cmd_summarize(const Options& o) {
  const std::filesystem::path dir(o.out);
  const auto groups = summarize_results(dir / "results.jsonl");
  {
    std::ofstream f(dir / "summary_stats.csv");
    write_summary_stats_csv(f, groups);
  }
  write_summary_stats_csv(std::cout, groups);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci-anyon braid compilation by estimation of distribution algorithms"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config_file, "JSON file mirroring the flags");
    s->add_option("--out", o.out, "output directory");
    s->add_option("--seed", o.seed, "root seed");
    s->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify-tables", "recompute the published braid table");
  verify->add_option("--data", o.data_file, "braid table JSON");
  verify->add_option("--config", o.config_file, "JSON file mirroring the flags");

  auto* boltz = app.add_subcommand("boltzmann", "exhaustive Boltzmann landscape analysis");
  common(boltz);
  boltz->add_option("--n", o.ns, "word length")->expected(1);
  boltz->add_option("--lambda", o.lambda, "length weight");
  boltz->add_option("--temperature", o.temperature, "Boltzmann temperature");
  boltz->add_option("--function", o.function, "f | f_hat | f_bar");
  boltz->add_option("--versus", o.versus, "second function for scatter.csv");
  boltz->add_option("--guard", o.guard, "maximum n to enumerate");

  auto* run = app.add_subcommand("run", "run EDA variants");
  common(run);
  run->add_option("--n", o.ns, "word lengths")->expected(1, 16);
  run->add_option("--variant", o.variant, "L tf tl ts pm")->expected(5);
  run->add_flag("--grid", o.grid, "all 288 variants");
  run->add_option("--runs", o.runs, "runs per variant and n");
  run->add_flag("--paper-budgets", o.paper_budgets, "population/generations of the full study");
  run->add_flag("--desk", o.desk, "scaled-down budgets (default)");
  run->add_option("--lambda", o.lambda, "ignored by run; lambda comes from the variant");
  run->add_option("--population", o.population, "override population size");
  run->add_option("--generations", o.generations, "override generation count");
  run->add_option("--max-evaluations", o.max_evaluations, "evaluation budget per run");

  auto* base = app.add_subcommand("baselines", "random and greedy search baselines");
  common(base);
  base->add_option("--n", o.ns, "word lengths")->expected(1, 16);
  base->add_option("--runs", o.runs, "repetitions");
  base->add_option("--draws", o.draws, "solutions per repetition");
  base->add_option("--lambda", o.lambda, "length weight of f-bar");

  auto* summ = app.add_subcommand("summarize", "per-variant statistics of results.jsonl");
  summ->add_option("--out", o.out, "result directory");
  summ->add_option("--config", o.config_file, "JSON file mirroring the flags");

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    apply_config_file(*sub, o);
    if (sub == verify) return cmd_verify_tables(o);
    if (sub == boltz) return cmd_boltzmann(o);
    if (sub == run) return cmd_run(o);
    if (sub == base) return cmd_baselines(o);
    if (sub == summ) return cmd_summarize(o);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "braidopt/harness.hpp"

using namespace braidopt;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("braidopt_test_" + name);
  fs::remove_all(d);
  return d;
}

const fs::path kTable = fs::path(BRAIDOPT_DATA_DIR) / "table1_braids.json";

}  // namespace

TEST_CASE("published braids verify") {
  const auto rows = load_published_braids(kTable);
  REQUIRE(rows.size() == 5);
  const auto checks = verify_published_braids(fibonacci_generators(), rows);
  for (const auto& c : checks) {
    CHECK(c.pass());
    CHECK(c.effective_length == c.row.length);
  }
  CHECK(checks[1].row.n == 100);
  CHECK(checks[1].epsilon == doctest::Approx(8.3527e-6).epsilon(1e-4));
  CHECK(checks[1].sk_estimate == doctest::Approx(633.37).epsilon(1e-4));
  CHECK(checks[1].length_advantage() >= 9.0);
  CHECK(checks[4].row.n == 250);
  CHECK(checks[4].effective_length == 124);
  CHECK(checks[4].epsilon == doctest::Approx(3.5038e-6).epsilon(1e-4));
  CHECK(format_braid_report(checks).find("FAIL") == std::string::npos);
}

TEST_CASE("bad rows are reported, not thrown") {
  auto rows = load_published_braids(kTable);
  rows[0].braid = "s1 s2 q7";
  rows[1].epsilon *= 1.01;
  const auto checks = verify_published_braids(fibonacci_generators(), rows);
  CHECK_FALSE(checks[0].pass());
  CHECK(checks[0].error.find("q7") != std::string::npos);
  CHECK_FALSE(checks[1].pass());
  CHECK(checks[2].pass());
}

TEST_CASE("grid") {
  ExperimentGrid g;
  CHECK(g.variants.size() == 288);
  std::set<int> ids;
  for (const auto& v : g.variants) ids.insert(v.id());
  CHECK(ids.size() == 288);
  g.ns = {50};
  g.runs = 2;
  const auto jobs = g.jobs();
  CHECK(jobs.size() == 576);
  std::set<std::uint64_t> seeds;
  for (const auto& j : jobs) seeds.insert(j.seed);
  CHECK(seeds.size() == jobs.size());
  g.ns = {50, 100, 150, 200, 250};
  g.runs = 100;
  seeds.clear();
  for (const auto& j : g.jobs()) seeds.insert(j.seed);
  CHECK(seeds.size() == 288u * 5 * 100);
}

TEST_CASE("config_for applies overrides") {
  Job j{Variant::parse("1 3 1 2 1"), 50, 0, 11};
  BudgetOverrides b;
  b.population = 64;
  b.max_evaluations = 1000;
  const auto c = config_for(j, b);
  CHECK(c.population == 64);
  CHECK(c.generations == 30);
  CHECK(c.max_evaluations == 1000u);
  CHECK(c.seed == 11);
  CHECK(c.variant() == j.variant);
}

TEST_CASE("result store is reproducible") {
  const auto& gs = fibonacci_generators();
  Job j{Variant::parse("0 2 1 1 2"), 12, 0, ExperimentGrid::job_seed(1, 0, 12, 0)};
  BudgetOverrides b;
  b.population = 80;
  b.generations = 6;
  std::string first;
  for (int t = 0; t < 2; ++t) {
    const auto dir = fresh_dir("store" + std::to_string(t));
    {
      ResultStore store(dir);
      store.append(run_eda(config_for(j, b), gs), gs);
    }
    const auto text = slurp(dir / "results.jsonl");
    CHECK(text.size() > 0);
    if (t == 0) first = text;
    else CHECK(text == first);
    const auto csv = slurp(dir / "summary.csv");
    CHECK(csv.rfind(summary_csv_header(), 0) == 0);
  }
}

TEST_CASE("record JSON is self-describing") {
  const auto& gs = fibonacci_generators();
  auto c = EdaConfig::from_variant(Variant::parse("1 3 1 2 1"), 10, BudgetPreset::kDesk, 5);
  c.population = 40;
  c.generations = 3;
  const auto rec = run_eda(c, gs);
  const auto j = record_final_json(rec, gs);
  CHECK(j.at("variant_id").get<int>() == Variant::parse("1 3 1 2 1").id());
  CHECK(j.at("total_evaluations").get<std::uint64_t>() == rec.total_evaluations);
  CHECK(j.at("best_fitness").get<double>() == rec.best_eval.fitness);
  CHECK(parse_braid_text(gs, j.at("best_word").get<std::string>()) == rec.best_word);
  CHECK(j.dump().find("wall") == std::string::npos);
  std::istringstream lines(record_to_jsonl(rec, gs));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(nlohmann::json::parse(line).is_object());
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("run_jobs keeps job order") {
  std::vector<std::size_t> order;
  run_jobs(
      9, 3,
      [](std::size_t i) {
        RunRecord r;
        r.total_evaluations = i;
        return r;
      },
      [&](std::size_t i, const RunRecord& r) {
        CHECK(r.total_evaluations == i);
        order.push_back(i);
      });
  CHECK(order == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("quantiles and summaries") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK(quantile({0, 10}, 0.25) == 2.5);
  CHECK_THROWS(median({}));

  const auto& gs = fibonacci_generators();
  const auto dir = fresh_dir("summary");
  {
    ResultStore store(dir);
    BaselineConfig b;
    b.n = 8;
    b.draws = 10;
    for (std::uint64_t s = 0; s < 3; ++s) {
      b.seed = s;
      store.append(random_search(b, gs), gs);
      store.append(greedy_search(b, gs), gs);
    }
  }
  const auto groups = summarize_results(dir / "results.jsonl");
  REQUIRE(groups.size() == 2);
  for (const auto& g : groups) {
    CHECK(g.runs == 3);
    CHECK(g.n == 8);
    CHECK(g.min <= g.q1);
    CHECK(g.q1 <= g.median);
    CHECK(g.median <= g.q3);
    CHECK(g.q3 <= g.max);
  }
  std::ostringstream os;
  write_summary_stats_csv(os, groups);
  const auto text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("boltzmann outputs") {
  const auto& gs = fibonacci_generators();
  const auto dir = fresh_dir("boltzmann");
  const FitnessSpec a{FitnessVariant::kPlain, 0.01, Recoding::kNone};
  const FitnessSpec b{FitnessVariant::kPrefixBest, 0.01, Recoding::kNone};
  const auto rep = write_boltzmann_outputs(gs, a, b, 4, 1.0, dir);
  CHECK(rep.words == 256);
  CHECK(rep.dominance_violations == 0);
  const auto uni = slurp(dir / "univariate.csv");
  CHECK(uni.rfind("position,p_sigma1,p_sigma2,p_sigma1_inv,p_sigma2_inv", 0) == 0);
  CHECK(std::count(uni.begin(), uni.end(), '\n') == 5);
  const auto mi = slurp(dir / "mutual_info.csv");
  CHECK(std::count(mi.begin(), mi.end(), '\n') == 1 + 16);
  const auto sc = slurp(dir / "scatter.csv");
  CHECK(std::count(sc.begin(), sc.end(), '\n') == 1 + 256);
}

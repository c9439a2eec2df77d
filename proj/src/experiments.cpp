#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "braidopt/harness.hpp"
#include "braidopt/rng.hpp"

namespace braidopt {

std::vector<Variant> ExperimentGrid::all_variants() {
  std::vector<Variant> v;
  v.reserve(Variant::kCount);
  for (int id = 0; id < Variant::kCount; ++id) v.push_back(Variant::from_id(id));
  return v;
}

std::uint64_t ExperimentGrid::job_seed(std::uint64_t root, int variant_id, int n, int run) {
  return derive_seed(root, {static_cast<std::uint64_t>(variant_id), static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(run)});
}

std::vector<Job> ExperimentGrid::jobs() const {
  std::vector<Job> out;
  out.reserve(ns.size() * variants.size() * runs);
  for (int n : ns)
    for (const auto& v : variants)
      for (int r = 0; r < runs; ++r) out.push_back({v, n, r, job_seed(root_seed, v.id(), n, r)});
  return out;
}

EdaConfig config_for(const Job& job, const BudgetOverrides& budget) {
  EdaConfig c = EdaConfig::from_variant(job.variant, job.n, budget.preset, job.seed);
  if (budget.population) c.population = *budget.population;
  if (budget.generations) c.generations = *budget.generations;
  c.max_evaluations = budget.max_evaluations;
  return c;
}

namespace {

nlohmann::json config_json(const EdaConfig& c) {
  nlohmann::json j = {{"n", c.n},
                      {"use_local", c.use_local},
                      {"function_mode", static_cast<int>(c.function_mode)},
                      {"function", to_string(c.function_mode)},
                      {"lambda_index", c.lambda_index},
                      {"lambda", c.lambda()},
                      {"sampling_mode", static_cast<int>(c.sampling_mode)},
                      {"sampling", to_string(c.sampling_mode)},
                      {"model_type", static_cast<int>(c.model_type)},
                      {"model", to_string(c.model_type)},
                      {"population", c.population},
                      {"generations", c.generations},
                      {"truncation", c.truncation},
                      {"seed", c.seed}};
  j["max_evaluations"] = c.max_evaluations ? nlohmann::json(*c.max_evaluations) : nlohmann::json();
  return j;
}

std::string variant_label(const RunRecord& rec) {
  return rec.method == "eda" ? rec.config.variant().to_string() : rec.method;
}

}  // namespace

nlohmann::json record_final_json(const RunRecord& rec, const GeneratorSet& gs) {
  const double eps = rec.best_eval.epsilon;
  nlohmann::json j = {{"type", "final"},
                      {"method", rec.method},
                      {"variant", variant_label(rec)},
                      {"n", rec.config.n},
                      {"seed", rec.config.seed},
                      {"config", config_json(rec.config)},
                      {"best_word", format_braid_text(gs, rec.best_word)},
                      {"best_braid", format_braid_text(gs, rec.best_braid)},
                      {"best_fitness", rec.best_eval.fitness},
                      {"best_epsilon", eps},
                      {"log10_best_epsilon", std::log10(eps)},
                      {"log10_best_fitness", std::log10(rec.best_eval.fitness)},
                      {"best_used_length", rec.best_eval.used_length},
                      {"best_prefix_len", rec.best_eval.best_prefix_len},
                      {"best_effective_length", effective_length(gs, rec.best_braid)},
                      {"total_evaluations", rec.total_evaluations},
                      {"generations_run", rec.generations.size()},
                      {"budget_exhausted", rec.budget_exhausted}};
  if (rec.method == "eda") j["variant_id"] = rec.config.variant().id();
  j["sk_estimate"] = eps > 0.0 && eps < 1.0 ? nlohmann::json(sk_length_estimate(eps)) : nlohmann::json();
  return j;
}

std::string record_to_jsonl(const RunRecord& rec, const GeneratorSet& gs) {
  std::string out;
  const std::string label = variant_label(rec);
  for (const auto& g : rec.generations) {
    nlohmann::json j = {{"type", "generation"},
                        {"method", rec.method},
                        {"variant", label},
                        {"n", rec.config.n},
                        {"seed", rec.config.seed},
                        {"generation", g.generation},
                        {"best_fitness", g.best_fitness},
                        {"mean_fitness", g.mean_fitness},
                        {"best_epsilon", g.best_epsilon},
                        {"best_length", g.best_length},
                        {"incumbent_fitness", g.incumbent_fitness},
                        {"evaluations", g.evaluations}};
    out += j.dump();
    out += '\n';
  }
  out += record_final_json(rec, gs).dump();
  out += '\n';
  return out;
}

std::string summary_csv_header() {
  return "variant_id,variant,method,n,seed,best_fitness,best_epsilon,best_length,evaluations,"
         "wall_clock_s";
}

std::string summary_csv_line(const RunRecord& rec) {
  std::ostringstream os;
  os << (rec.method == "eda" ? std::to_string(rec.config.variant().id()) : std::string("-"))
     << ',' << '"' << variant_label(rec) << '"' << ',' << rec.method << ',' << rec.config.n
     << ',' << rec.config.seed << ',' << std::setprecision(17) << rec.best_eval.fitness << ','
     << rec.best_eval.epsilon << ',' << rec.best_eval.used_length << ',' << rec.total_evaluations
     << ',' << std::setprecision(6) << rec.wall_clock_seconds;
  return os.str();
}

ResultStore::ResultStore(const std::filesystem::path& dir) : dir_(dir) {
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / "summary.csv";
  const bool fresh = !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
  jsonl_.open(dir / "results.jsonl", std::ios::app);
  csv_.open(csv_path, std::ios::app);
  if (!jsonl_ || !csv_) throw std::runtime_error("cannot open result files in " + dir.string());
  if (fresh) csv_ << summary_csv_header() << '\n';
}

void ResultStore::append(const RunRecord& rec, const GeneratorSet& gs) {
  const std::string lines = record_to_jsonl(rec, gs);
  std::lock_guard lock(mu_);
  jsonl_ << lines;
  jsonl_.flush();
  csv_ << summary_csv_line(rec) << '\n';
  csv_.flush();
}

void run_jobs(std::size_t count, int workers, const std::function<RunRecord(std::size_t)>& job,
              const std::function<void(std::size_t, const RunRecord&)>& on_done) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) on_done(i, job(i));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::map<std::size_t, RunRecord> pending;
  std::size_t emitted = 0;
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            RunRecord r = job(i);
            std::lock_guard lock(mu);
            pending.emplace(i, std::move(r));
            while (!pending.empty() && pending.begin()->first == emitted) {
              on_done(emitted, pending.begin()->second);
              pending.erase(pending.begin());
              ++emitted;
            }
          } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            next = count;
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace braidopt

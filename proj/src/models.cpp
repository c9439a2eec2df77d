#include "braidopt/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace braidopt {

namespace {

int check_sample(const Sample& sample, int arity) {
  if (sample.empty()) throw std::invalid_argument("cannot learn from an empty sample");
  const std::size_t n = sample.front().size();
  if (n == 0) throw std::invalid_argument("cannot learn from zero-length words");
  for (const auto& w : sample) {
    if (w.size() != n) throw std::invalid_argument("ragged sample: words differ in length");
    for (Symbol s : w)
      if (s >= arity) throw std::invalid_argument("sample symbol exceeds model arity");
  }
  return static_cast<int>(n);
}

Row smoothed(const std::vector<double>& counts, double total, double alpha) {
  Row r(counts.size());
  const double denom = total + alpha * static_cast<double>(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) r[a] = (counts[a] + alpha) / denom;
  return r;
}

// counts[a * q + b] for the pair (i, j)
std::vector<double> pair_counts(const Sample& sample, int i, int j, int q) {
  std::vector<double> c(static_cast<std::size_t>(q * q), 0.0);
  for (const auto& w : sample) c[w[i] * q + w[j]] += 1.0;
  return c;
}

ConditionalTable conditional(const std::vector<double>& joint_counts, int q, double alpha) {
  ConditionalTable t(q);
  for (int a = 0; a < q; ++a) {
    std::vector<double> row(joint_counts.begin() + a * q, joint_counts.begin() + (a + 1) * q);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    t[a] = smoothed(row, total, alpha);
  }
  return t;
}

std::vector<double> position_counts(const Sample& sample, int i, int q) {
  std::vector<double> c(q, 0.0);
  for (const auto& w : sample) c[w[i]] += 1.0;
  return c;
}

struct DisjointSets {
  std::vector<int> up;
  explicit DisjointSets(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

UnivariateModel learn_univariate(const Sample& sample, int arity, double alpha) {
  const int n = check_sample(sample, arity);
  UnivariateModel m;
  m.n = n;
  m.arity = arity;
  m.probs.resize(n);
  const auto k = static_cast<double>(sample.size());
  for (int i = 0; i < n; ++i) m.probs[i] = smoothed(position_counts(sample, i, arity), k, alpha);
  return m;
}

MarkovChainModel learn_markov(const Sample& sample, int arity, double alpha) {
  const int n = check_sample(sample, arity);
  MarkovChainModel m;
  m.n = n;
  m.arity = arity;
  m.initial = smoothed(position_counts(sample, 0, arity), static_cast<double>(sample.size()),
                       alpha);
  m.transitions.reserve(n - 1);
  for (int i = 1; i < n; ++i)
    m.transitions.push_back(conditional(pair_counts(sample, i - 1, i, arity), arity, alpha));
  return m;
}

std::vector<std::vector<double>> pairwise_mutual_information(const Sample& sample, int arity,
                                                             double alpha) {
  const int n = check_sample(sample, arity);
  const int q = arity;
  const double denom = static_cast<double>(sample.size()) + alpha * q * q;
  std::vector<std::vector<double>> mi(n, std::vector<double>(n, 0.0));
  std::vector<double> joint(q * q), pa(q), pb(q);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto c = pair_counts(sample, i, j, q);
      std::fill(pa.begin(), pa.end(), 0.0);
      std::fill(pb.begin(), pb.end(), 0.0);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          const double p = (c[a * q + b] + alpha) / denom;
          joint[a * q + b] = p;
          pa[a] += p;
          pb[b] += p;
        }
      double v = 0.0;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          const double p = joint[a * q + b];
          if (p > 0.0) v += p * std::log2(p / (pa[a] * pb[b]));
        }
      mi[i][j] = mi[j][i] = std::max(v, 0.0);
    }
  }
  return mi;
}

std::vector<int> maximum_spanning_forest(const std::vector<std::vector<double>>& weights,
                                         double threshold) {
  const int n = static_cast<int>(weights.size());
  struct Edge {
    double w;
    int i, j;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights[i][j] >= threshold) edges.push_back({weights[i][j], i, j});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  DisjointSets sets(n);
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    if (sets.unite(e.i, e.j)) {
      adj[e.i].push_back(e.j);
      adj[e.j].push_back(e.i);
    }
  }

  std::vector<int> parent(n, TreeModel::kNoParent);
  std::vector<bool> seen(n, false);
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      auto next = adj[u];
      std::sort(next.begin(), next.end());
      for (int v : next) {
        if (seen[v]) continue;
        seen[v] = true;
        parent[v] = u;
        q.push(v);
      }
    }
  }
  return parent;
}

TreeModel learn_tree(const Sample& sample, int arity, double alpha) {
  const int n = check_sample(sample, arity);
  TreeModel m;
  m.n = n;
  m.arity = arity;
  m.learned_mi = pairwise_mutual_information(sample, arity, alpha);
  m.parent = maximum_spanning_forest(m.learned_mi);
  m.root_probs.resize(n);
  m.cpts.resize(n);
  const auto k = static_cast<double>(sample.size());
  for (int i = 0; i < n; ++i) {
    if (m.parent[i] == TreeModel::kNoParent)
      m.root_probs[i] = smoothed(position_counts(sample, i, arity), k, alpha);
    else
      m.cpts[i] = conditional(pair_counts(sample, m.parent[i], i, arity), arity, alpha);
  }

  // Breadth-first from each root, lowest index first.
  std::vector<std::vector<int>> children(n);
  for (int i = 0; i < n; ++i)
    if (m.parent[i] != TreeModel::kNoParent) children[m.parent[i]].push_back(i);
  for (int r = 0; r < n; ++r) {
    if (m.parent[r] != TreeModel::kNoParent) continue;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      m.order.push_back(u);
      for (int v : children[u]) q.push(v);
    }
  }
  return m;
}

ProbModel learn_model(ModelType type, const Sample& sample, int arity, double alpha) {
  switch (type) {
    case ModelType::kUnivariate: return learn_univariate(sample, arity, alpha);
    case ModelType::kMarkov: return learn_markov(sample, arity, alpha);
    case ModelType::kTree: return learn_tree(sample, arity, alpha);
  }
  throw std::invalid_argument("unknown model type");
}

ModelType model_type(const ProbModel& m) { return static_cast<ModelType>(m.index()); }

int model_length(const ProbModel& m) {
  return std::visit([](const auto& x) { return x.n; }, m);
}

namespace {

Symbol draw(Rng& rng, const Row& row) { return static_cast<Symbol>(sample_categorical(rng, row)); }

// Draws position i given the word currently in `w`.
struct PositionSampler {
  BraidWord& w;
  Rng& rng;

  void operator()(const UnivariateModel& m, int i) const { w[i] = draw(rng, m.probs[i]); }
  void operator()(const MarkovChainModel& m, int i) const {
    w[i] = i == 0 ? draw(rng, m.initial) : draw(rng, m.transitions[i - 1][w[i - 1]]);
  }
  void operator()(const TreeModel& m, int i) const {
    const int p = m.parent[i];
    w[i] = p == TreeModel::kNoParent ? draw(rng, m.root_probs[i]) : draw(rng, m.cpts[i][w[p]]);
  }
};

template <typename Model>
std::vector<int> ancestral_order(const Model& m) {
  std::vector<int> order(m.n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

std::vector<int> ancestral_order(const TreeModel& m) { return m.order; }

}  // namespace

BraidWord sample_one(const ProbModel& model, Rng& rng) {
  return std::visit(
      [&](const auto& m) {
        BraidWord w(m.n);
        PositionSampler s{w, rng};
        for (int i : ancestral_order(m)) s(m, i);
        return w;
      },
      model);
}

Sample sample_full(const ProbModel& m, std::size_t count, Rng& rng) {
  Sample out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_one(m, rng));
  return out;
}

BraidWord resample_positions(const ProbModel& model, WordView base,
                             std::span<const int> positions, Rng& rng) {
  return std::visit(
      [&](const auto& m) {
        if (static_cast<int>(base.size()) != m.n)
          throw std::invalid_argument("base word length does not match the model");
        BraidWord w(base.begin(), base.end());
        std::vector<bool> chosen(m.n, false);
        for (int p : positions) chosen.at(p) = true;
        PositionSampler s{w, rng};
        for (int i : ancestral_order(m))
          if (chosen[i]) s(m, i);
        return w;
      },
      model);
}

BraidWord sample_partial_count(const ProbModel& m, WordView base, std::size_t count, Rng& rng) {
  const auto n = base.size();
  if (count > n) throw std::invalid_argument("cannot resample more positions than the word has");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = k + uniform_below(rng, n - k);
    std::swap(idx[k], idx[j]);
  }
  return resample_positions(m, base, std::span<const int>(idx.data(), count), rng);
}

BraidWord sample_partial(const ProbModel& m, WordView base, PartialMode mode, Rng& rng) {
  const std::size_t n = base.size();
  const std::size_t hi = mode == PartialMode::kTypeI ? n : std::max<std::size_t>(n / 2, 1);
  const std::size_t k = uniform_int(rng, 1, hi);
  return sample_partial_count(m, base, k, rng);
}

double log_likelihood(const ProbModel& model, WordView w) {
  struct {
    WordView w;
    double operator()(const UnivariateModel& m) const {
      double s = 0.0;
      for (int i = 0; i < m.n; ++i) s += std::log(m.probs[i][w[i]]);
      return s;
    }
    double operator()(const MarkovChainModel& m) const {
      double s = std::log(m.initial[w[0]]);
      for (int i = 1; i < m.n; ++i) s += std::log(m.transitions[i - 1][w[i - 1]][w[i]]);
      return s;
    }
    double operator()(const TreeModel& m) const {
      double s = 0.0;
      for (int i = 0; i < m.n; ++i) {
        const int p = m.parent[i];
        s += std::log(p == TreeModel::kNoParent ? m.root_probs[i][w[i]] : m.cpts[i][w[p]][w[i]]);
      }
      return s;
    }
  } visitor{w};
  if (static_cast<int>(w.size()) != model_length(model))
    throw std::invalid_argument("word length does not match the model");
  return std::visit(visitor, model);
}

std::string to_string(ModelType t) {
  switch (t) {
    case ModelType::kUnivariate: return "univariate";
    case ModelType::kMarkov: return "markov";
    case ModelType::kTree: return "tree";
  }
  return "?";
}

nlohmann::json model_to_json(const ProbModel& model) {
  using nlohmann::json;
  struct {
    json operator()(const UnivariateModel& m) const {
      return {{"model_type", "univariate"}, {"n", m.n}, {"arity", m.arity}, {"probs", m.probs}};
    }
    json operator()(const MarkovChainModel& m) const {
      return {{"model_type", "markov"},
              {"n", m.n},
              {"arity", m.arity},
              {"initial", m.initial},
              {"transitions", m.transitions}};
    }
    json operator()(const TreeModel& m) const {
      json roots = json::array(), cpts = json::array();
      for (int i = 0; i < m.n; ++i) {
        roots.push_back(m.root_probs[i].empty() ? json(nullptr) : json(m.root_probs[i]));
        cpts.push_back(m.cpts[i].empty() ? json(nullptr) : json(m.cpts[i]));
      }
      return {{"model_type", "tree"}, {"n", m.n},           {"arity", m.arity},
              {"parent", m.parent},   {"root_probs", roots}, {"cpts", cpts},
              {"order", m.order},     {"mutual_info", m.learned_mi}};
    }
  } visitor;
  return std::visit(visitor, model);
}

ProbModel model_from_json(const nlohmann::json& j) {
  const auto type = j.at("model_type").get<std::string>();
  const int n = j.at("n").get<int>();
  const int arity = j.value("arity", 4);
  if (type == "univariate") {
    UnivariateModel m{n, arity, j.at("probs").get<std::vector<Row>>()};
    return m;
  }
  if (type == "markov") {
    MarkovChainModel m{n, arity, j.at("initial").get<Row>(),
                       j.at("transitions").get<std::vector<ConditionalTable>>()};
    return m;
  }
  if (type == "tree") {
    TreeModel m;
    m.n = n;
    m.arity = arity;
    m.parent = j.at("parent").get<std::vector<int>>();
    m.order = j.at("order").get<std::vector<int>>();
    m.learned_mi = j.value("mutual_info", std::vector<std::vector<double>>{});
    m.root_probs.resize(n);
    m.cpts.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& r = j.at("root_probs").at(i);
      const auto& c = j.at("cpts").at(i);
      if (!r.is_null()) m.root_probs[i] = r.get<Row>();
      if (!c.is_null()) m.cpts[i] = c.get<ConditionalTable>();
    }
    return m;
  }
  throw std::invalid_argument("unknown model_type '" + type + "'");
}

}  // namespace braidopt

#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "braidopt/harness.hpp"

namespace braidopt {

double mean_adjacent_mi(const MarginalSet& m) {
  if (m.n < 2) return 0.0;
  double s = 0.0;
  for (int i = 0; i + 1 < m.n; ++i) s += m.mutual_info[i][i + 1];
  return s / (m.n - 1);
}

double mean_non_adjacent_mi(const MarginalSet& m) {
  double s = 0.0;
  int count = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 2; j < m.n; ++j, ++count) s += m.mutual_info[i][j];
  return count == 0 ? 0.0 : s / count;
}

void write_univariate_csv(std::ostream& os, const MarginalSet& m) {
  os << "position,p_sigma1,p_sigma2,p_sigma1_inv,p_sigma2_inv\n" << std::setprecision(17);
  for (int i = 0; i < m.n; ++i) {
    os << i + 1;
    for (double p : m.univariate[i]) os << ',' << p;
    os << '\n';
  }
}

void write_mutual_info_csv(std::ostream& os, const MarginalSet& m) {
  os << "position_i,position_j,mi_bits\n" << std::setprecision(17);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) os << i + 1 << ',' << j + 1 << ',' << m.mutual_info[i][j] << '\n';
}

namespace {
std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}
}  // namespace

BoltzmannReport write_boltzmann_outputs(const GeneratorSet& gs, const FitnessSpec& a,
                                        const FitnessSpec& b, int n, double temperature,
                                        const std::filesystem::path& out_dir, int guard) {
  const auto scatter = pairwise_fitness_scatter(gs, a, b, n, temperature, guard);
  std::vector<double> fa(scatter.size());
  for (std::size_t k = 0; k < scatter.size(); ++k) fa[k] = scatter[k].fitness_a;
  const auto table = boltzmann_from_fitness(n, gs.arity(), fa, temperature);
  const auto m = marginals(table);

  std::filesystem::create_directories(out_dir);
  {
    auto f = open_out(out_dir / "univariate.csv");
    write_univariate_csv(f, m);
  }
  {
    auto f = open_out(out_dir / "mutual_info.csv");
    write_mutual_info_csv(f, m);
  }
  BoltzmannReport rep;
  rep.words = scatter.size();
  {
    auto f = open_out(out_dir / "scatter.csv");
    f << "word_index,p_specA,p_specB\n" << std::setprecision(17);
    for (const auto& s : scatter) {
      f << s.index << ',' << s.p_a << ',' << s.p_b << '\n';
      if (s.fitness_b < s.fitness_a) ++rep.dominance_violations;
    }
  }
  rep.position_average = m.position_average();
  rep.adjacent_mi = mean_adjacent_mi(m);
  rep.non_adjacent_mi = mean_non_adjacent_mi(m);
  return rep;
}

}  // namespace braidopt

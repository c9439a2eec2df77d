#pragma once

// Naive re-implementations used as test oracles. Nothing here calls into the
// library, so agreement is evidence rather than tautology.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = std::array<std::array<C, 2>, 2>;

inline const double kPi = std::acos(-1.0);
inline const double kTau = (std::sqrt(5.0) - 1.0) / 2.0;

inline M mul(const M& a, const M& b) {
  M r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline M adj(const M& a) {
  M r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

// s1, s2, s1^-1, s2^-1
inline std::array<M, 4> generators() {
  const C i(0, 1);
  M s1{{{std::exp(-i * (7 * kPi / 10)), 0}, {0, -std::exp(-i * (3 * kPi / 10))}}};
  M s2{{{-kTau * std::exp(-i * (kPi / 10)), -i * std::sqrt(kTau)},
        {-i * std::sqrt(kTau), -kTau * std::exp(i * (kPi / 10))}}};
  return {s1, s2, adj(s1), adj(s2)};
}

inline M target() {
  const C i(0, 1);
  return M{{{0, i}, {i, 0}}};
}

inline M product(const std::vector<std::uint8_t>& w) {
  static const auto g = generators();
  M r{{{1, 0}, {0, 1}}};
  for (auto s : w) r = mul(r, g[s]);
  return r;
}

inline double error(const M& b) {
  const M t = target();
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += std::norm(b[i][j] - t[i][j]);
  return std::sqrt(s / 2);
}

// Repeatedly deletes the leftmost adjacent inverse pair.
inline std::vector<std::uint8_t> reduce(std::vector<std::uint8_t> w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if ((w[i] + 2) % 4 == w[i + 1]) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
  }
  return w;
}

inline double fit(double eps, std::size_t l, double lambda) {
  return (1 - lambda) / (1 + eps) + lambda / static_cast<double>(l);
}

inline double plain(const std::vector<std::uint8_t>& w, double lambda) {
  return fit(error(product(w)), w.size(), lambda);
}

inline double effective(const std::vector<std::uint8_t>& w, double lambda) {
  return fit(error(product(w)), std::max<std::size_t>(1, reduce(w).size()), lambda);
}

inline double prefix_best(const std::vector<std::uint8_t>& w, double lambda) {
  double best = -1;
  for (std::size_t k = 1; k <= w.size(); ++k)
    best = std::max(best, plain(std::vector<std::uint8_t>(w.begin(), w.begin() + k), lambda));
  return best;
}

// Little-endian base-4 index to word.
inline std::vector<std::uint8_t> word(std::uint64_t index, int n) {
  std::vector<std::uint8_t> w(n);
  for (int i = 0; i < n; ++i, index /= 4) w[i] = static_cast<std::uint8_t>(index % 4);
  return w;
}

}  // namespace oracle

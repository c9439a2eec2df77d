#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace braidopt {

using Complex = std::complex<double>;

// Dense 2x2 complex matrix, row-major.
//
// Multiplication is written out on real/imaginary parts: std::complex's
// operator* goes through the Annex G NaN recovery path, which dominates the
// cost of long braid products.
struct Matrix2 {
  std::array<Complex, 4> e{};

  constexpr Matrix2() = default;
  constexpr Matrix2(Complex a, Complex b, Complex c, Complex d) : e{a, b, c, d} {}

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex& operator()(int r, int c) { return e[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return e[2 * r + c]; }

  Matrix2 adjoint() const {
    return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
  }

  Complex det() const { return e[0] * e[3] - e[1] * e[2]; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

namespace detail {
inline Complex fma2(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  // a*b + c*d
  return {a.real() * b.real() - a.imag() * b.imag() + c.real() * d.real() - c.imag() * d.imag(),
          a.real() * b.imag() + a.imag() * b.real() + c.real() * d.imag() + c.imag() * d.real()};
}
}  // namespace detail

inline Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  using detail::fma2;
  return {fma2(x.e[0], y.e[0], x.e[1], y.e[2]), fma2(x.e[0], y.e[1], x.e[1], y.e[3]),
          fma2(x.e[2], y.e[0], x.e[3], y.e[2]), fma2(x.e[2], y.e[1], x.e[3], y.e[3])};
}

inline Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
  return {x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]};
}

// sum |M_ij|^2
inline double frobenius_sq(const Matrix2& m) {
  double s = 0.0;
  for (const auto& z : m.e) s += z.real() * z.real() + z.imag() * z.imag();
  return s;
}

inline double frobenius(const Matrix2& m) { return std::sqrt(frobenius_sq(m)); }

// Largest entrywise modulus, handy for tolerance checks.
inline double max_abs(const Matrix2& m) {
  double s = 0.0;
  for (const auto& z : m.e) s = std::max(s, std::abs(z));
  return s;
}

}  // namespace braidopt

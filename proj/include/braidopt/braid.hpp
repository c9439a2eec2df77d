#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "braidopt/matrix2.hpp"

namespace braidopt {

// Symbol j < g is sigma_{j+1}; symbol j >= g is sigma_{j-g+1}^{-1}.
using Symbol = std::uint8_t;
using BraidWord = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

// Generator matrices sigma_1..sigma_g followed by their inverses, plus the
// gate the braids should approximate.
class GeneratorSet {
 public:
  // Inverses are taken as adjoints, so the generators must be unitary.
  GeneratorSet(std::vector<Matrix2> generators, Matrix2 target);

  int g() const noexcept { return g_; }
  int arity() const noexcept { return 2 * g_; }
  const Matrix2& matrix(Symbol s) const { return matrices_[s]; }
  const std::vector<Matrix2>& matrices() const noexcept { return matrices_; }
  const Matrix2& target() const noexcept { return target_; }

  Symbol inverse(Symbol s) const noexcept {
    return static_cast<Symbol>(s < g_ ? s + g_ : s - g_);
  }
  bool valid(Symbol s) const noexcept { return s < 2 * g_; }

 private:
  int g_;
  std::vector<Matrix2> matrices_;
  Matrix2 target_;
};

// (sqrt(5) - 1) / 2
inline constexpr double kTau = 0.6180339887498948482;

// The two-generator Fibonacci anyon set projected onto SU(2), targeting the
// NOT gate iX = [[0, i], [i, 0]].
const GeneratorSet& fibonacci_generators();

// Throws InvalidSymbol on the first out-of-range symbol.
void validate(const GeneratorSet& gs, WordView w);

// matrices[w_1] * ... * matrices[w_n]; identity for the empty word.
Matrix2 braid_product(const GeneratorSet& gs, WordView w);

// ||B - T||_F / sqrt(2). For B, T in SU(2) this is also the spectral norm of
// the difference.
double braid_error(const Matrix2& b, const Matrix2& t);

// Raw ||B - T||_F.
double frobenius_distance(const Matrix2& b, const Matrix2& t);

// Cancels adjacent inverse pairs until none remain (free reduction).
BraidWord free_reduce(const GeneratorSet& gs, WordView w);
std::size_t effective_length(const GeneratorSet& gs, WordView w);

// Word text: whitespace-separated tokens ("s"|"S")<index>["^"<int>].
// "S" inverts, the exponent repeats |m| times and a negative exponent inverts.
BraidWord parse_braid_text(const GeneratorSet& gs, std::string_view text);

// Lowercase, maximal runs with explicit exponents: "s1^-1 s2^3 s1^-2".
std::string format_braid_text(const GeneratorSet& gs, WordView w);

}  // namespace braidopt

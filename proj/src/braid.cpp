#include "braidopt/braid.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "braidopt/errors.hpp"

namespace braidopt {

GeneratorSet::GeneratorSet(std::vector<Matrix2> generators, Matrix2 target)
    : g_(static_cast<int>(generators.size())), target_(target) {
  if (g_ == 0 || g_ > 127) throw std::invalid_argument("generator count must be in [1, 127]");
  matrices_ = generators;
  for (const auto& m : generators) matrices_.push_back(m.adjoint());
}

const GeneratorSet& fibonacci_generators() {
  static const GeneratorSet gs = [] {
    using std::numbers::pi;
    const auto phase = [](double theta) { return std::polar(1.0, theta); };
    const Complex i{0.0, 1.0};
    const double sqrt_tau = std::sqrt(kTau);
    Matrix2 s1{phase(-7.0 * pi / 10.0), 0.0, 0.0, -phase(-3.0 * pi / 10.0)};
    Matrix2 s2{-kTau * phase(-pi / 10.0), -i * sqrt_tau, -i * sqrt_tau, -kTau * phase(pi / 10.0)};
    Matrix2 not_gate{0.0, i, i, 0.0};
    return GeneratorSet({s1, s2}, not_gate);
  }();
  return gs;
}

void validate(const GeneratorSet& gs, WordView w) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!gs.valid(w[k])) throw InvalidSymbol(k, w[k]);
}

Matrix2 braid_product(const GeneratorSet& gs, WordView w) {
  validate(gs, w);
  Matrix2 acc = Matrix2::identity();
  for (Symbol s : w) acc = acc * gs.matrix(s);
  return acc;
}

double braid_error(const Matrix2& b, const Matrix2& t) {
  return std::sqrt(0.5 * frobenius_sq(b - t));
}

double frobenius_distance(const Matrix2& b, const Matrix2& t) { return frobenius(b - t); }

BraidWord free_reduce(const GeneratorSet& gs, WordView w) {
  BraidWord stack;
  stack.reserve(w.size());
  for (Symbol s : w) {
    if (!stack.empty() && stack.back() == gs.inverse(s))
      stack.pop_back();
    else
      stack.push_back(s);
  }
  return stack;
}

std::size_t effective_length(const GeneratorSet& gs, WordView w) {
  return free_reduce(gs, w).size();
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

BraidWord parse_braid_text(const GeneratorSet& gs, std::string_view text) {
  BraidWord out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_space(text[pos])) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) ++pos;
    const std::string_view tok = text.substr(start, pos - start);
    const std::string tok_str(tok);

    if (tok[0] != 's' && tok[0] != 'S') throw ParseError(start, tok_str, "expected 's' or 'S'");
    const bool inverted = tok[0] == 'S';

    const char* first = tok.data() + 1;
    const char* last = tok.data() + tok.size();
    int index = 0;
    auto [p, ec] = std::from_chars(first, last, index);
    if (ec != std::errc{} || p == first || *first == '-' || *first == '+')
      throw ParseError(start, tok_str, "missing generator index");
    if (index < 1 || index > gs.g())
      throw ParseError(start, tok_str,
                       "generator index out of range [1, " + std::to_string(gs.g()) + "]");

    int exponent = 1;
    if (p != last) {
      if (*p != '^') throw ParseError(start, tok_str, "unexpected character after index");
      ++p;
      auto [q, ec2] = std::from_chars(p, last, exponent);
      if (ec2 != std::errc{} || q == p) throw ParseError(start, tok_str, "malformed exponent");
      if (q != last) throw ParseError(start, tok_str, "trailing characters after exponent");
      if (exponent == 0) throw ParseError(start, tok_str, "exponent 0");
    }

    auto sym = static_cast<Symbol>(index - 1);
    if (inverted != (exponent < 0)) sym = gs.inverse(sym);
    out.insert(out.end(), static_cast<std::size_t>(std::abs(exponent)), sym);
  }
  return out;
}

std::string format_braid_text(const GeneratorSet& gs, WordView w) {
  validate(gs, w);
  std::string out;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    const Symbol s = w[k];
    const bool inv = s >= gs.g();
    const int index = (inv ? s - gs.g() : s) + 1;
    if (!out.empty()) out += ' ';
    out += 's';
    out += std::to_string(index);
    if (inv)
      out += "^-" + std::to_string(run);
    else if (run > 1)
      out += "^" + std::to_string(run);
    k += run;
  }
  return out;
}

}  // namespace braidopt

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidopt {

// A braid symbol outside [0, 2g).
class InvalidSymbol : public std::out_of_range {
 public:
  InvalidSymbol(std::size_t position, int symbol)
      : std::out_of_range("invalid braid symbol " + std::to_string(symbol) +
                          " at position " + std::to_string(position)),
        position_(position),
        symbol_(symbol) {}
  std::size_t position() const noexcept { return position_; }
  int symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  int symbol_;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t offset, std::string token, const std::string& why)
      : std::invalid_argument("parse error at offset " + std::to_string(offset) +
                              " (token '" + token + "'): " + why),
        offset_(offset),
        token_(std::move(token)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t offset_;
  std::string token_;
};

// Empty word (or similar) handed to an evaluator.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Best prefix reduced to the identity; there is nothing to recode with.
class DegenerateRecode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration refused because the space is too large.
class EnumerationGuard : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace braidopt

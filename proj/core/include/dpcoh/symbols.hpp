#ifndef DPCOH_SYMBOLS_HPP_
#define DPCOH_SYMBOLS_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dpcoh/lattice_aut.hpp"

namespace dpcoh {

// Symbol text grammar (normative for data files and the CLI):
//   SYMBOL := TERM ("." TERM)*
//   TERM   := M ("^" E)?
// M a positive decimal integer, E a nonzero decimal integer with optional
// leading '-'.  No whitespace.  Canonical form lists M ascending and omits
// "^1".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class NonCyclotomicFactor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSymbol : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Polynomial = std::vector<std::int64_t>;  // constant term first

int euler_phi(int m);
// Phi_m with exact integer coefficients, cached.
const Polynomial& cyclotomic(int m);

// Multiplicity c_m of Phi_m in a characteristic polynomial.  Displayed with
// exponent n_m = c_m * phi(m), the number of primitive m-th roots.
class CharSymbol {
 public:
  CharSymbol() = default;
  static CharSymbol from_multiplicities(std::map<int, int> mult);
  // Exponents as displayed: each must be a positive multiple of phi(m).
  static CharSymbol from_display(const std::map<int, int>& shown);

  const std::map<int, int>& multiplicities() const { return mult_; }
  std::map<int, int> display_exponents() const;
  int multiplicity(int m) const;
  int degree() const;

  friend bool operator==(const CharSymbol&, const CharSymbol&) = default;
  friend auto operator<=>(const CharSymbol&, const CharSymbol&) = default;

 private:
  std::map<int, int> mult_;
};

// prod (t^m - 1)^{n_m}, n_m nonzero.
class FrameSymbol {
 public:
  FrameSymbol() = default;
  // Zero exponents are dropped.  Throws InvalidSymbol if the product is not
  // a polynomial.
  static FrameSymbol from_exponents(std::map<int, int> exps);

  const std::map<int, int>& exponents() const { return exps_; }
  int degree() const;

  friend bool operator==(const FrameSymbol&, const FrameSymbol&) = default;
  friend auto operator<=>(const FrameSymbol&, const FrameSymbol&) = default;

 private:
  std::map<int, int> exps_;
};

CharSymbol char_symbol_of_polynomial(const Polynomial& poly);
CharSymbol char_symbol(const SquareMatrix& m);
CharSymbol char_symbol(const LatticeAut& g);

// Unique Frame exponents over the divisor closure of the support.
FrameSymbol frame_from_char(const CharSymbol& c);
// Cyclotomic multiplicities of prod (t^m - 1)^{n_m}.
CharSymbol char_from_frame(const FrameSymbol& f);
Polynomial expand(const CharSymbol& c);

FrameSymbol power_frame(const FrameSymbol& f, int r);
CharSymbol power_char(const CharSymbol& c, int r);

std::string format_symbol(const FrameSymbol& f);
std::string format_symbol(const CharSymbol& c);
// Every exponent written, wrapped in braces when longer than one character:
// "1^{-4}.2^6", "9^1".
std::string format_symbol_tex(const FrameSymbol& f);
std::string format_symbol_tex(const CharSymbol& c);

// Raw terms of a symbol string; duplicates rejected.
std::map<int, int> parse_symbol(std::string_view text);
FrameSymbol parse_frame_symbol(std::string_view text);
CharSymbol parse_char_symbol(std::string_view text);
// Accepts the brace form written in typeset tables ("1^{-4}. 2^6"): drops
// braces and blanks, then applies the normative grammar.
std::string normalize_tex_symbol(std::string_view text);

}  // namespace dpcoh

#endif  // DPCOH_SYMBOLS_HPP_

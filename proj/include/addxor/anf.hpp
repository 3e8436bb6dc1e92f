// Algebraic-normal-form machinery: dense truth tables, per-bit Zhegalkin
// polynomials over concrete bit variables, and weighted monomials over
// shifted formal bit variables.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "addxor/word.hpp"

namespace addxor {

// Hard guard on dense table sizes: q^k entries must not exceed this.
constexpr std::size_t max_table_entries = std::size_t{1} << 24;

// Entry count q^k, checked against the guard.
std::size_t table_size(Modulus m, int arity);

// A total function Z_q^k -> Z_q stored as a dense value array, indexed by
// the argument tuple in row-major order (first argument most significant).
class TruthTable {
 public:
  TruthTable(Modulus m, int arity, std::vector<std::uint32_t> values);

  // Builds the table by evaluating fn on every raw argument tuple.
  static TruthTable from_function(
      Modulus m, int arity,
      const std::function<std::uint32_t(std::span<const std::uint32_t>)>& fn);

  Modulus modulus() const { return mod_; }
  int arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  std::uint32_t operator[](std::size_t index) const { return values_[index]; }
  const std::vector<std::uint32_t>& values() const { return values_; }

  std::size_t index_of(std::span<const std::uint32_t> args) const;
  // Decodes a row-major index back into the argument tuple.
  std::vector<std::uint32_t> args_of(std::size_t index) const;

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.mod_ == b.mod_ && a.arity_ == b.arity_ && a.values_ == b.values_;
  }

 private:
  Modulus mod_;
  int arity_;
  std::vector<std::uint32_t> values_;
};

// One shifted formal bit variable: argument `var` at shift l >= 0, denoting
// bit i-l of that argument for the ambient bit index i.
struct VarShift {
  int var;
  int shift;
  auto operator<=>(const VarShift&) const = default;
};

// A product of distinct shifted bit variables. Never empty: the free term
// is representable only at the BitPolynomial level and is forbidden in
// canonical polynomials.
class Monomial {
 public:
  explicit Monomial(std::vector<VarShift> factors);

  const std::vector<VarShift>& factors() const { return factors_; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<VarShift> factors_;  // sorted by (var, shift), duplicate-free
};

// Weight of a monomial in units of 2/q: scaled = sum of 2^(kappa-1-l) over
// its factors. The weight bound "<= 1" is "scaled <= q/2".
struct DyadicWeight {
  std::uint32_t scaled;

  bool at_most_one(Modulus m) const { return scaled <= m.q() / 2; }
  auto operator<=>(const DyadicWeight&) const = default;
};

DyadicWeight weight(const Monomial& m, Modulus mod);

// Canonical ordering: scaled weight descending, ties broken lexicographically
// by the (var, shift) factor sequence. Printed normal forms are byte-stable.
bool canonical_monomial_less(const Monomial& a, const Monomial& b, Modulus mod);

// A Zhegalkin polynomial over GF(2) in concrete bit variables
// {(var v, bit j) : 0 <= j < kappa}, plus an optional free term. Always kept
// reduced: duplicate monomials cancel eagerly.
//
// A monomial is stored as a bitmask in the same bit convention as a truth
// table index: variable (v, j) occupies bit (arity-1-v)*kappa + j.
class BitPolynomial {
 public:
  BitPolynomial(Modulus m, int arity, bool free_term,
                std::vector<std::uint32_t> monomial_masks);

  Modulus modulus() const { return mod_; }
  int arity() const { return arity_; }
  bool has_free_term() const { return free_term_; }
  const std::vector<std::uint32_t>& monomial_masks() const { return masks_; }
  bool empty() const { return !free_term_ && masks_.empty(); }

  static int mask_bit_position(int var, int bit_index, int arity, int kappa) {
    return (arity - 1 - var) * kappa + bit_index;
  }
  // Decodes a mask into (var, bit) pairs sorted by (var, bit).
  std::vector<VarShift> decode_mask(std::uint32_t mask) const;

  // Evaluates the polynomial on one raw argument tuple.
  int evaluate(std::span<const std::uint32_t> args) const;

  std::string render() const;

  friend bool operator==(const BitPolynomial& a, const BitPolynomial& b) {
    return a.mod_ == b.mod_ && a.arity_ == b.arity_ &&
           a.free_term_ == b.free_term_ && a.masks_ == b.masks_;
  }

 private:
  Modulus mod_;
  int arity_;
  bool free_term_;
  std::vector<std::uint32_t> masks_;  // sorted, duplicate-free, nonzero
};

// The unique Zhegalkin polynomial whose evaluation equals bit i of t on
// every input, computed by the Moebius/butterfly transform over the
// indicator table.
BitPolynomial bit_polynomial(const TruthTable& t, int i);

// In-place XOR butterfly over a 2^n indicator/coefficient table; its own
// inverse. Exposed for the involution property tests.
void moebius_transform(std::vector<std::uint8_t>& table);

// The substitution x0 -> 0, x1 -> x0, x2 -> x1, ...: every concrete bit
// variable drops by one position; monomials containing a bit-0 variable are
// deleted; duplicates then cancel over GF(2). The free term is unchanged.
BitPolynomial shift_substitute(const BitPolynomial& p);

// An i-independent Zhegalkin polynomial without free term, every monomial of
// weight <= 1, over shifted formal variables. Determines a function by
// bit i of f(args) = eval of the polynomial with shift l bound to bit i-l.
class CanonicalPoly {
 public:
  // Sorts canonically and cancels duplicate monomials over GF(2). Throws
  // weight_error if any monomial has weight > 1, std::out_of_range if any
  // shift is outside [0, kappa).
  CanonicalPoly(Modulus m, int arity, std::vector<Monomial> monomials);

  Modulus modulus() const { return mod_; }
  int arity() const { return arity_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool empty() const { return monomials_.empty(); }

  int eval_bit(std::span<const Word> inputs, int i) const;

  // Dense table of the function this polynomial determines.
  TruthTable to_table() const;

  // CLI contract: factors as `x[-l]` (shift 0 as `x[0]`) joined by `*`,
  // monomials joined by ` ^ `, the empty polynomial as `0`.
  std::string render() const;

  friend bool operator==(const CanonicalPoly& a, const CanonicalPoly& b) {
    return a.mod_ == b.mod_ && a.arity_ == b.arity_ &&
           a.monomials_ == b.monomials_;
  }

 private:
  Modulus mod_;
  int arity_;
  std::vector<Monomial> monomials_;
};

// Rebinds the concrete bit variables of p for ambient bit index i: concrete
// (v, j) becomes formal (v, shift i-j). Throws free_term_error if p has a
// free term, weight_error if any resulting monomial has weight > 1, and
// std::invalid_argument if some concrete bit exceeds i.
CanonicalPoly to_canonical(const BitPolynomial& p, int i);

// Evaluates g with formal shift l bound to concrete bit i-l of each input
// (zero when i-l < 0).
int eval_canonical(const CanonicalPoly& g, std::span<const Word> inputs,
                   int i);

}  // namespace addxor

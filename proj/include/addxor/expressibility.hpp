// Decision procedure for expressibility via ADD and XOR, free-algebra
// enumeration, exact counting, and the brute-force closure oracle.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "addxor/anf.hpp"

namespace addxor {

using BigInt = boost::multiprecision::cpp_int;

enum class FailureKind { free_term, weight_exceeded, shift_mismatch };

struct Failure {
  FailureKind kind;
  int bit = -1;  // meaningful for shift_mismatch

  std::string describe() const;
};

// Outcome of the decision procedure: either a canonical witness polynomial
// or the first failing condition in algorithm order.
struct Verdict {
  bool algebraic;
  std::optional<CanonicalPoly> witness;
  std::optional<Failure> failure;
};

// Decides whether t is expressible via ADD and XOR. Computes the Zhegalkin
// polynomial of the most significant bit, checks the free-term and weight
// conditions there, then walks down: each lower bit's polynomial must equal
// the shift-substitution of the one above. The reported failure is the first
// in that order (free term, then weight, then highest mismatching bit).
Verdict decide_algebraic(const TruthTable& t);

// Exponent of the free-algebra size: (q/2+1)(q/2+2)...(q/2+k)/k! - 1,
// i.e. C(q/2+k, k) - 1. Exact at any scale.
BigInt free_algebra_exponent(int k, Modulus m);

// |F_{k,q}| = 2^exponent, exact.
BigInt count_free_algebra(int k, Modulus m);

// Every monomial of weight <= 1 over k variables, each exactly once, in
// canonical order. For k = 1 this realizes the bijection between scaled
// weights s in {1, ..., q/2} and monomials via binary decomposition of s.
std::vector<Monomial> enumerate_monomials(int k, Modulus m);

constexpr std::uint64_t default_enumeration_cap = std::uint64_t{1} << 20;

// All canonical polynomials over k variables (every subset of the canonical
// monomial list, ordered as binary counters over it), each paired with its
// dense truth table. Throws cap_exceeded if the family is larger than cap.
std::vector<std::pair<CanonicalPoly, TruthTable>> enumerate_free_algebra(
    int k, Modulus m, std::uint64_t cap = default_enumeration_cap);

// Independent brute-force oracle: the fixpoint of closing the k projection
// tables under pointwise ADD and XOR. Deterministic order: breadth-first by
// generation depth, ties broken by table bytes.
std::vector<TruthTable> closure_oracle(int k, Modulus m,
                                       std::uint64_t cap =
                                           default_enumeration_cap);

}  // namespace addxor

// Exact arithmetic on elements of Z_q for q = 2^kappa: modular addition,
// bitwise XOR/AND, shifts, the ring product, and bit extraction.
#pragma once

#include <cstdint>
#include <string>

#include "addxor/errors.hpp"

namespace addxor {

// Number of bits kappa, with q = 2^kappa. kappa is capped at 16 so that
// dense truth tables (q^k entries) stay desk-scale.
class Modulus {
 public:
  static constexpr int max_kappa = 16;

  explicit Modulus(int kappa) : kappa_(kappa) {
    if (kappa < 1 || kappa > max_kappa)
      throw unsupported_modulus("kappa must be in [1, " +
                                std::to_string(max_kappa) + "], got " +
                                std::to_string(kappa));
    q_ = std::uint32_t{1} << kappa;
  }

  static Modulus from_q(std::uint64_t q) {
    for (int kappa = 1; kappa <= max_kappa; ++kappa)
      if (q == (std::uint64_t{1} << kappa)) return Modulus(kappa);
    throw unsupported_modulus("q must be a power of two in [2, 65536], got " +
                              std::to_string(q));
  }

  int kappa() const { return kappa_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t mask() const { return q_ - 1; }

  friend bool operator==(Modulus a, Modulus b) { return a.kappa_ == b.kappa_; }
  friend bool operator!=(Modulus a, Modulus b) { return a.kappa_ != b.kappa_; }

 private:
  int kappa_;
  std::uint32_t q_;
};

// An element of Z_q. Immutable; carries its modulus so that operands from
// different moduli are rejected rather than silently coerced.
class Word {
 public:
  Word(std::uint32_t value, Modulus m) : value_(value), mod_(m) {
    if (value >= m.q())
      throw std::out_of_range("word value " + std::to_string(value) +
                              " not below q = " + std::to_string(m.q()));
  }

  std::uint32_t value() const { return value_; }
  Modulus modulus() const { return mod_; }

  friend bool operator==(Word a, Word b) {
    return a.mod_ == b.mod_ && a.value_ == b.value_;
  }
  friend bool operator!=(Word a, Word b) { return !(a == b); }

 private:
  std::uint32_t value_;
  Modulus mod_;
};

namespace detail {
inline Modulus common_modulus(Word x, Word y) {
  if (x.modulus() != y.modulus())
    throw modulus_mismatch("operands have different moduli: q = " +
                           std::to_string(x.modulus().q()) + " vs q = " +
                           std::to_string(y.modulus().q()));
  return x.modulus();
}
}  // namespace detail

// Addition modulo q (machine-word addition with wraparound).
inline Word add(Word x, Word y) {
  Modulus m = detail::common_modulus(x, y);
  return Word((x.value() + y.value()) & m.mask(), m);
}

// Bitwise addition modulo 2.
inline Word bxor(Word x, Word y) {
  Modulus m = detail::common_modulus(x, y);
  return Word(x.value() ^ y.value(), m);
}

// Bitwise multiplication modulo 2 (conjunction).
inline Word conj(Word x, Word y) {
  Modulus m = detail::common_modulus(x, y);
  return Word(x.value() & y.value(), m);
}

// The i-th binary digit of x. Total over all integer indices: bits outside
// [0, kappa) read as zero, so shift recurrences need no boundary cases.
inline int bit(Word x, int i) {
  if (i < 0 || i >= x.modulus().kappa()) return 0;
  return static_cast<int>((x.value() >> i) & 1u);
}

// x * 2^k mod q: left shift discarding overflow. k must be nonnegative.
inline Word mul2k(Word x, int k) {
  if (k < 0) throw std::invalid_argument("mul2k: negative shift");
  Modulus m = x.modulus();
  if (k >= m.kappa()) return Word(0, m);
  return Word((x.value() << k) & m.mask(), m);
}

// The ring product: x o y = 2 (x & y) mod q.
inline Word circ(Word x, Word y) { return mul2k(conj(x, y), 1); }

// [x, y] = x ^ y ^ (x + y). Bit i of the result is the carry into digit i
// when computing x + y.
inline Word commutator(Word x, Word y) {
  return bxor(bxor(x, y), add(x, y));
}

inline Word operator+(Word x, Word y) { return add(x, y); }
inline Word operator^(Word x, Word y) { return bxor(x, y); }

}  // namespace addxor

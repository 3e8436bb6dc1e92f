#include <doctest.h>

#include <cstdint>
#include <tuple>
#include <vector>

#include "addxor/word.hpp"

using namespace addxor;

namespace {

const Modulus q8 = Modulus::from_q(8);
Word w8(std::uint32_t v) { return Word(v, q8); }

}  // namespace

TEST_CASE("modulus construction and guards") {
  CHECK(Modulus(3).q() == 8);
  CHECK(Modulus(3).mask() == 7);
  CHECK(Modulus::from_q(65536).kappa() == 16);
  CHECK(Modulus::from_q(2).kappa() == 1);
  CHECK_THROWS_AS(Modulus(0), unsupported_modulus);
  CHECK_THROWS_AS(Modulus(17), unsupported_modulus);
  CHECK_THROWS_AS(Modulus::from_q(7), unsupported_modulus);
  CHECK_THROWS_AS(Modulus::from_q(0), unsupported_modulus);
  CHECK_THROWS_AS(Modulus::from_q(131072), unsupported_modulus);
}

TEST_CASE("word range check and modulus mixing") {
  CHECK_THROWS_AS(Word(8, q8), std::out_of_range);
  CHECK_NOTHROW(Word(7, q8));
  const Word a(1, q8);
  const Word b(1, Modulus::from_q(4));
  CHECK_THROWS_AS(add(a, b), modulus_mismatch);
  CHECK_THROWS_AS(bxor(a, b), modulus_mismatch);
  CHECK_THROWS_AS(conj(a, b), modulus_mismatch);
}

TEST_CASE("operation examples at q = 8") {
  CHECK(add(w8(5), w8(6)).value() == 3);
  CHECK(bxor(w8(5), w8(6)).value() == 3);
  CHECK(conj(w8(5), w8(6)).value() == 4);
  CHECK(circ(w8(3), w8(5)).value() == 2);
  CHECK(commutator(w8(1), w8(3)).value() == 6);
  CHECK(mul2k(w8(3), 1).value() == 6);
  CHECK(mul2k(w8(3), 2).value() == 4);
  CHECK(mul2k(w8(3), 3).value() == 0);
  CHECK(mul2k(w8(3), 99).value() == 0);
  CHECK_THROWS_AS(mul2k(w8(1), -1), std::invalid_argument);
}

TEST_CASE("bit extraction is total") {
  CHECK(bit(w8(5), 0) == 1);
  CHECK(bit(w8(5), 1) == 0);
  CHECK(bit(w8(5), 2) == 1);
  CHECK(bit(w8(5), -1) == 0);
  CHECK(bit(w8(5), 3) == 0);
  CHECK(bit(w8(5), 1000) == 0);
}

TEST_CASE("single-operation group identities, exhaustive") {
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const Modulus m(kappa);
    const std::uint32_t q = m.q();
    for (std::uint32_t xv = 0; xv < q; ++xv)
      for (std::uint32_t yv = 0; yv < q; ++yv) {
        const Word x(xv, m), y(yv, m);
        CHECK(add(x, y) == add(y, x));
        CHECK(bxor(x, y) == bxor(y, x));
        CHECK(bxor(x, bxor(y, y)) == x);  // y^y is the xor-zero
        // x + qy = x: qy is y added q times, i.e. the add-zero
        Word qy(0, m);
        for (std::uint32_t i = 0; i < q; ++i) qy = add(qy, y);
        CHECK(qy.value() == 0);
        CHECK(add(x, qy) == x);
        for (std::uint32_t zv = 0; zv < q; ++zv) {
          const Word z(zv, m);
          CHECK(add(add(x, y), z) == add(x, add(y, z)));
          CHECK(bxor(bxor(x, y), z) == bxor(x, bxor(y, z)));
        }
      }
  }
}

TEST_CASE("commutator bits follow the carry recursion") {
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const Modulus m(kappa);
    for (std::uint32_t xv = 0; xv < m.q(); ++xv)
      for (std::uint32_t yv = 0; yv < m.q(); ++yv) {
        const Word x(xv, m), y(yv, m);
        const Word c = commutator(x, y);
        CHECK(bit(c, 0) == 0);
        for (int i = 0; i < kappa; ++i) {
          const int expected =
              (bit(x, i - 1) & bit(y, i - 1)) ^
              (bit(c, i - 1) & (bit(x, i - 1) ^ bit(y, i - 1)));
          CHECK(bit(c, i) == expected);
        }
      }
  }
}

TEST_CASE("doubled-conjunction identity, exhaustive") {
  // (2x) & (2y) = [x,y] ^ (2[x,y] & 2x) ^ (2[x,y] & 2y)
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const Modulus m(kappa);
    for (std::uint32_t xv = 0; xv < m.q(); ++xv)
      for (std::uint32_t yv = 0; yv < m.q(); ++yv) {
        const Word x(xv, m), y(yv, m);
        const Word c = commutator(x, y);
        const Word lhs = conj(mul2k(x, 1), mul2k(y, 1));
        const Word rhs = bxor(bxor(c, conj(mul2k(c, 1), mul2k(x, 1))),
                              conj(mul2k(c, 1), mul2k(y, 1)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("full-adder identity x + y = (x ^ y) + 2(x & y), exhaustive") {
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const Modulus m(kappa);
    for (std::uint32_t xv = 0; xv < m.q(); ++xv)
      for (std::uint32_t yv = 0; yv < m.q(); ++yv) {
        const Word x(xv, m), y(yv, m);
        CHECK(add(x, y) == add(bxor(x, y), mul2k(conj(x, y), 1)));
        // carry decomposition: [x,y] = 2(x & y) ^ 2([x,y] & (x ^ y))
        const Word c = commutator(x, y);
        CHECK(c == bxor(mul2k(conj(x, y), 1),
                        mul2k(conj(c, bxor(x, y)), 1)));
      }
  }
}

TEST_CASE("left-bracketed ring products of kappa+1 factors vanish") {
  for (int kappa = 1; kappa <= 3; ++kappa) {
    const Modulus m(kappa);
    const std::uint32_t q = m.q();
    // exhaustive over (kappa+1)-tuples via an odometer
    std::vector<std::uint32_t> tuple(kappa + 1, 0);
    bool done = false;
    while (!done) {
      Word acc(tuple[0], m);
      for (int i = 1; i <= kappa; ++i) acc = circ(acc, Word(tuple[i], m));
      CHECK(acc.value() == 0);
      int pos = kappa;
      while (pos >= 0 && ++tuple[pos] == q) tuple[pos--] = 0;
      done = pos < 0;
    }
    // and some shorter product does not vanish (q-1 is all ones)
    Word acc(q - 1, m);
    for (int i = 1; i < kappa; ++i) acc = circ(acc, Word(q - 1, m));
    CHECK(acc.value() != 0);
  }
}

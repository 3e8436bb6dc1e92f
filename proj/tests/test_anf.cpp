#include <doctest.h>

#include <random>
#include <vector>

#include "addxor/anf.hpp"

using namespace addxor;

namespace {

const Modulus q8 = Modulus::from_q(8);

// f(x) = x ^ 4*(x0 AND x1): the identity except f(3) = 7 and f(7) = 3.
// The running single-argument example table at q = 8.
const TruthTable example_table(q8, 1, {0, 1, 2, 7, 4, 5, 6, 3});

}  // namespace

TEST_CASE("table size guard") {
  CHECK(table_size(q8, 1) == 8);
  CHECK(table_size(q8, 8) == std::size_t{1} << 24);
  CHECK_THROWS_AS(table_size(q8, 9), guard_exceeded);
  CHECK_THROWS_AS(table_size(Modulus::from_q(4), 13), guard_exceeded);
}

TEST_CASE("truth table construction and indexing") {
  CHECK_THROWS_AS(TruthTable(q8, 1, {0, 1, 2}), table_format_error);
  CHECK_THROWS_AS(TruthTable(q8, 1, {0, 1, 2, 3, 4, 5, 6, 8}),
                  table_format_error);

  const Modulus q4 = Modulus::from_q(4);
  const TruthTable t = TruthTable::from_function(
      q4, 2, [](std::span<const std::uint32_t> a) {
        return (a[0] + 2 * a[1]) & 3u;
      });
  // row-major: first argument most significant
  CHECK(t[t.index_of(std::vector<std::uint32_t>{1, 0})] == 1);
  CHECK(t[t.index_of(std::vector<std::uint32_t>{0, 1})] == 2);
  CHECK(t.index_of(std::vector<std::uint32_t>{1, 0}) == 4);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(t.index_of(t.args_of(i)) == i);
}

TEST_CASE("per-bit polynomials of the example table") {
  // bit2 = x2 ^ x1 x0, bit1 = x1, bit0 = x0
  const BitPolynomial p2 = bit_polynomial(example_table, 2);
  CHECK(!p2.has_free_term());
  CHECK(p2.monomial_masks() == std::vector<std::uint32_t>{3, 4});

  const BitPolynomial p0 = bit_polynomial(example_table, 0);
  CHECK(!p0.has_free_term());
  CHECK(p0.monomial_masks() == std::vector<std::uint32_t>{1});

  // every bit polynomial evaluates back to the table bit
  for (int i = 0; i < 3; ++i) {
    const BitPolynomial p = bit_polynomial(example_table, i);
    for (std::uint32_t x = 0; x < 8; ++x) {
      const std::vector<std::uint32_t> args{x};
      CHECK(p.evaluate(args) == static_cast<int>((example_table[x] >> i) & 1));
    }
  }
}

TEST_CASE("identity function has single-variable bit polynomials") {
  const TruthTable ident = TruthTable::from_function(
      q8, 1, [](std::span<const std::uint32_t> a) { return a[0]; });
  for (int i = 0; i < 3; ++i) {
    const BitPolynomial p = bit_polynomial(ident, i);
    CHECK(!p.has_free_term());
    CHECK(p.monomial_masks() ==
          std::vector<std::uint32_t>{std::uint32_t{1} << i});
  }
}

TEST_CASE("moebius transform is an involution") {
  std::mt19937 rng(7);
  std::vector<std::uint8_t> table(64);
  for (auto& v : table) v = rng() & 1;
  std::vector<std::uint8_t> copy = table;
  moebius_transform(table);
  CHECK(table != copy);  // astronomically unlikely to be fixed
  moebius_transform(table);
  CHECK(table == copy);
}

TEST_CASE("free term appears exactly for functions nonzero at zero") {
  const TruthTable c4 = TruthTable::from_function(
      q8, 1, [](std::span<const std::uint32_t>) { return 4u; });
  CHECK(bit_polynomial(c4, 2).has_free_term());
  CHECK(bit_polynomial(c4, 2).monomial_masks().empty());
  CHECK(bit_polynomial(c4, 0).empty());
}

TEST_CASE("shift substitution") {
  // x2 ^ x1 x0  ->  x1 (the product dies with its bit-0 factor)
  const BitPolynomial p(q8, 1, false, {4, 3});
  const BitPolynomial s = shift_substitute(p);
  CHECK(!s.has_free_term());
  CHECK(s.monomial_masks() == std::vector<std::uint32_t>{2});

  // the free term survives, bit-0 monomials are deleted
  const BitPolynomial f(q8, 1, true, {1});
  const BitPolynomial sf = shift_substitute(f);
  CHECK(sf.has_free_term());
  CHECK(sf.monomial_masks().empty());

  // two-variable masks shift per variable block: arity 2, kappa 3 puts
  // x bits at positions 3..5 and y bits at 0..2
  const BitPolynomial two(Modulus::from_q(8), 2, false, {(1u << 4) | 2u});
  CHECK(shift_substitute(two).monomial_masks() ==
        std::vector<std::uint32_t>{(1u << 3) | 1u});
}

TEST_CASE("monomial validation and weights") {
  CHECK_THROWS_AS(Monomial({}), std::invalid_argument);
  CHECK_THROWS_AS(Monomial({{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Monomial({{0, -1}}), std::invalid_argument);

  // factors are sorted on construction
  const Monomial m({{0, 2}, {0, 1}});
  CHECK(m.factors() == std::vector<VarShift>{{0, 1}, {0, 2}});

  // kappa = 3: scaled weight of shift l is 2^(2-l)
  CHECK(weight(Monomial({{0, 0}}), q8).scaled == 4);
  CHECK(weight(Monomial({{0, 1}}), q8).scaled == 2);
  CHECK(weight(Monomial({{0, 1}, {0, 2}}), q8).scaled == 3);
  CHECK(weight(Monomial({{0, 0}}), q8).at_most_one(q8));
  CHECK(weight(Monomial({{0, 0}, {1, 0}}), q8).scaled == 8);
  CHECK(!weight(Monomial({{0, 0}, {1, 0}}), q8).at_most_one(q8));
}

TEST_CASE("canonical monomial order: weight descending, then lexicographic") {
  const Monomial top({{0, 0}});          // scaled 4
  const Monomial mid({{0, 1}, {0, 2}});  // scaled 3
  const Monomial low({{0, 2}});          // scaled 1
  CHECK(canonical_monomial_less(top, mid, q8));
  CHECK(canonical_monomial_less(mid, low, q8));
  CHECK(!canonical_monomial_less(low, top, q8));
  // tie on weight: lexicographic by (var, shift)
  const Monomial xs({{0, 0}});
  const Monomial ys({{1, 0}});
  CHECK(canonical_monomial_less(xs, ys, q8));
  CHECK(!canonical_monomial_less(ys, xs, q8));
}

TEST_CASE("canonical polynomial validation, rendering, evaluation") {
  CHECK_THROWS_AS(CanonicalPoly(q8, 2, {Monomial({{0, 0}, {1, 0}})}),
                  weight_error);
  CHECK_THROWS_AS(CanonicalPoly(q8, 1, {Monomial({{0, 3}})}),
                  std::out_of_range);

  // duplicate monomials cancel over GF(2)
  const CanonicalPoly cancelled(
      q8, 1, {Monomial({{0, 0}}), Monomial({{0, 0}})});
  CHECK(cancelled.empty());
  CHECK(cancelled.render() == "0");

  const CanonicalPoly example(
      q8, 1, {Monomial({{0, 1}, {0, 2}}), Monomial({{0, 0}})});
  CHECK(example.render() == "x[0] ^ x[-1]*x[-2]");
  CHECK(example.to_table() == example_table);

  // eval_bit at bit i binds shift l to bit i-l (zero below zero)
  const std::vector<Word> in{Word(3, q8)};
  CHECK(example.eval_bit(in, 0) == 1);
  CHECK(eval_canonical(example, in, 2) == 1);  // f(3) = 7
}

TEST_CASE("canonicalization from bit polynomials") {
  // free term is rejected
  CHECK_THROWS_AS(to_canonical(BitPolynomial(q8, 1, true, {}), 2),
                  free_term_error);
  // x2 y2 at bit 2 has weight 2
  const std::uint32_t x2 = 1u << 5, y2 = 1u << 2;
  CHECK_THROWS_AS(to_canonical(BitPolynomial(q8, 2, false, {x2 | y2}), 2),
                  weight_error);
  // a concrete bit above the ambient index cannot be rebound
  CHECK_THROWS_AS(to_canonical(BitPolynomial(q8, 1, false, {4}), 1),
                  std::invalid_argument);

  // round trip through the example's top bit
  const CanonicalPoly g = to_canonical(bit_polynomial(example_table, 2), 2);
  CHECK(g.render() == "x[0] ^ x[-1]*x[-2]");
}

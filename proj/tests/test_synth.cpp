#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include "addxor/expressibility.hpp"
#include "addxor/synth.hpp"

using namespace addxor;

namespace {

const Modulus q8 = Modulus::from_q(8);

// Deterministic random tree of exactly the given complexity over nvars.
TreePtr random_tree(std::mt19937& rng, std::uint64_t target, int nvars) {
  if (target == 1)
    return CommutatorTree::leaf(static_cast<int>(rng() % nvars));
  const std::uint64_t left = 1 + rng() % (target - 1);
  return CommutatorTree::node(random_tree(rng, left, nvars),
                              random_tree(rng, target - left, nvars));
}

// All tree shapes of the given complexity over one fixed variable.
std::vector<TreePtr> all_shapes(std::uint64_t complexity) {
  if (complexity == 1) return {CommutatorTree::leaf(0)};
  std::vector<TreePtr> out;
  for (std::uint64_t l = 1; l < complexity; ++l)
    for (const TreePtr& a : all_shapes(l))
      for (const TreePtr& b : all_shapes(complexity - l))
        out.push_back(CommutatorTree::node(a, b));
  return out;
}

void for_all_assignments(Modulus m, int nvars,
                         const std::function<void(std::span<const Word>)>& fn) {
  std::vector<std::uint32_t> raw(nvars, 0);
  for (;;) {
    std::vector<Word> in;
    for (std::uint32_t v : raw) in.emplace_back(v, m);
    fn(in);
    int pos = nvars - 1;
    while (pos >= 0 && ++raw[pos] == m.q()) raw[pos--] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

TEST_CASE("complexity and depth") {
  const TreePtr x = CommutatorTree::leaf(0);
  const TreePtr y = CommutatorTree::leaf(1);
  const TreePtr z = CommutatorTree::leaf(2);
  const TreePtr t = CommutatorTree::leaf(3);
  CHECK(complexity(x) == 1);
  CHECK(depth(x) == 0);

  const TreePtr xy = CommutatorTree::node(x, y);
  CHECK(complexity(xy) == 2);
  CHECK(depth(xy) == 1);

  // [[x, y], [z, t], x] read left-nested: complexity 5, depth 3
  const TreePtr inner = CommutatorTree::node(xy, CommutatorTree::node(z, t));
  const TreePtr anchor = CommutatorTree::node(inner, x);
  CHECK(complexity(anchor) == 5);
  CHECK(depth(anchor) == 3);
}

TEST_CASE("tree comparison is a total structural order") {
  const TreePtr x = CommutatorTree::leaf(0);
  const TreePtr y = CommutatorTree::leaf(1);
  const TreePtr xy = CommutatorTree::node(x, y);
  const TreePtr yx = CommutatorTree::node(y, x);
  CHECK(tree_compare(x, x) == 0);
  CHECK(tree_compare(x, y) < 0);
  CHECK(tree_compare(y, x) > 0);
  CHECK(tree_compare(x, xy) < 0);  // lower complexity first
  CHECK(tree_compare(xy, yx) != 0);
  CHECK(tree_compare(xy, yx) == -tree_compare(yx, xy));
  CHECK(tree_compare(xy, CommutatorTree::node(x, y)) == 0);
}

TEST_CASE("tree evaluation matches the word commutator") {
  const TreePtr xy =
      CommutatorTree::node(CommutatorTree::leaf(0), CommutatorTree::leaf(1));
  for_all_assignments(q8, 2, [&](std::span<const Word> in) {
    CHECK(eval_tree(xy, in) == commutator(in[0], in[1]));
  });
  const TreePtr nested = CommutatorTree::node(
      xy, CommutatorTree::leaf(0));  // [[x, y], x]
  for_all_assignments(q8, 2, [&](std::span<const Word> in) {
    CHECK(eval_tree(nested, in) == commutator(commutator(in[0], in[1]),
                                              in[0]));
  });
}

TEST_CASE("a zero operand collapses a commutator tree to zero") {
  // [0, b] = 0 ^ b ^ (0 + b) = 0 and [a, 0] = a ^ a = 0, so a zero child
  // at the root wipes out the whole tree.
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const TreePtr body = random_tree(rng, 1 + rng() % 5, 2);
    const TreePtr zero_left =
        CommutatorTree::node(CommutatorTree::leaf(0), body);
    const TreePtr zero_right =
        CommutatorTree::node(body, CommutatorTree::leaf(0));
    const std::vector<Word> in{Word(0, q8), Word(rng() % 8, q8)};
    CHECK(eval_tree(zero_left, in).value() == 0);
    CHECK(eval_tree(zero_right, in).value() == 0);
  }
}

TEST_CASE("product term validation") {
  const TreePtr x = CommutatorTree::leaf(0);
  CHECK_THROWS_AS(ProductTerm({}, q8), std::invalid_argument);
  CHECK_THROWS_AS(ProductTerm({{-1, x}}, q8), std::out_of_range);
  CHECK_THROWS_AS(ProductTerm({{3, x}}, q8), std::out_of_range);
  // two shift-0 factors: scaled sum 8 > 4
  CHECK_THROWS_AS(ProductTerm({{0, x}, {0, x}}, q8), weight_error);
  const ProductTerm ok({{1, x}, {1, x}}, q8);
  CHECK(ok.scaled_sum() == 4);
}

TEST_CASE("spelling out commutator trees") {
  const TreePtr x = CommutatorTree::leaf(0);
  const TreePtr y = CommutatorTree::leaf(1);

  // a shifted leaf is a doubling chain
  const ExprPtr twice = expr_of_commutator(x, 1);
  for_all_assignments(q8, 1, [&](std::span<const Word> in) {
    CHECK(evaluate(twice, in) == mul2k(in[0], 1));
  });

  // an unshifted node is the commutator itself
  const ExprPtr comm = expr_of_commutator(CommutatorTree::node(x, y), 0);
  for_all_assignments(q8, 2, [&](std::span<const Word> in) {
    CHECK(evaluate(comm, in) == commutator(in[0], in[1]));
  });

  // shifting by kappa kills everything
  const ExprPtr gone = expr_of_commutator(x, 3);
  for_all_assignments(q8, 1, [&](std::span<const Word> in) {
    CHECK(evaluate(gone, in).value() == 0);
  });
}

TEST_CASE("low bits of a commutator vanish below its depth") {
  std::mt19937 rng(5);
  for (std::uint32_t q : {2u, 4u, 8u, 16u}) {
    const Modulus m = Modulus::from_q(q);
    for (int trial = 0; trial < 40; ++trial) {
      const TreePtr w = random_tree(rng, 1 + rng() % 8, 2);
      for_all_assignments(m, 2, [&](std::span<const Word> in) {
        const Word value = eval_tree(w, in);
        for (int i = 0; i < depth(w) && i < m.kappa(); ++i)
          CHECK(bit(value, i) == 0);
      });
    }
  }
}

TEST_CASE("complexity at least 2^n forces depth at least n") {
  // exhaustive over all shapes up to complexity 8
  for (std::uint64_t c = 1; c <= 8; ++c)
    for (const TreePtr& t : all_shapes(c))
      for (int n = 0; n <= 3; ++n)
        if (complexity(t) >= (std::uint64_t{1} << n)) CHECK(depth(t) >= n);

  // random shapes up to complexity 32
  std::mt19937 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t c = 1 + rng() % 32;
    const TreePtr t = random_tree(rng, c, 4);
    for (int n = 0; n <= 5; ++n)
      if (complexity(t) >= (std::uint64_t{1} << n)) CHECK(depth(t) >= n);
  }
}

TEST_CASE("commutators of complexity at least q vanish") {
  std::mt19937 rng(9);
  for (std::uint32_t q : {2u, 4u, 8u}) {
    const Modulus m = Modulus::from_q(q);
    // all shapes at complexity exactly q (single variable), plus random
    // multi-variable trees up to complexity q+2
    for (const TreePtr& t : all_shapes(q))
      for_all_assignments(m, 1, [&](std::span<const Word> in) {
        CHECK(eval_tree(t, in).value() == 0);
      });
    for (int trial = 0; trial < 60; ++trial) {
      const TreePtr t = random_tree(rng, q + rng() % 3, 3);
      for_all_assignments(m, 3, [&](std::span<const Word> in) {
        CHECK(eval_tree(t, in).value() == 0);
      });
    }
  }
}

TEST_CASE("synthesis round trips whole families") {
  const std::pair<int, std::uint32_t> shapes[] = {
      {1, 4}, {1, 8}, {2, 2}, {2, 4}};
  for (const auto& [k, q] : shapes) {
    const Modulus m = Modulus::from_q(q);
    for (const auto& [poly, table] : enumerate_free_algebra(k, m)) {
      const ExprPtr e = synthesize(poly);
      CHECK(table_of(e, m, k) == table);
    }
  }
}

TEST_CASE("synthesis of plain monomials") {
  // bit i = x_i: the identity, spelled as the bare variable
  const CanonicalPoly ident(q8, 1, {Monomial({{0, 0}})});
  CHECK(render(synthesize(ident)) == "x");

  // bit i = x_{i-1}: doubling
  const CanonicalPoly dbl(q8, 1, {Monomial({{0, 1}})});
  const TruthTable t = table_of(synthesize(dbl), q8, 1);
  for (std::uint32_t v = 0; v < 8; ++v) CHECK(t[v] == (2 * v) % 8);

  // the empty polynomial synthesizes the zero spelling
  const CanonicalPoly zero(q8, 1, {});
  CHECK(render(synthesize(zero)) == "x ^ x");
}

TEST_CASE("weight-one monomials assemble the addition bit formula") {
  // bit i of x + y is the xor of ALL weight-exactly-one monomials
  for (std::uint32_t q : {2u, 4u, 8u, 16u}) {
    const Modulus m = Modulus::from_q(q);
    const TruthTable sum = TruthTable::from_function(
        m, 2, [&](std::span<const std::uint32_t> a) {
          return (a[0] + a[1]) & m.mask();
        });
    const Verdict v = decide_algebraic(sum);
    REQUIRE(v.algebraic);
    std::vector<Monomial> expect;
    for (const Monomial& mono : enumerate_monomials(2, m))
      if (weight(mono, m).scaled == m.q() / 2) expect.push_back(mono);
    CHECK(v.witness->monomials() == expect);
  }
}

TEST_CASE("synthesis respects its rewrite budget") {
  // x_{i-1} y_{i-1} at kappa 4 forces genuine rewriting
  const Modulus m(4);
  const CanonicalPoly g(m, 2, {Monomial({{0, 1}, {1, 1}})});
  CHECK_THROWS_AS(synthesize(g, 1), cap_exceeded);
  const ExprPtr e = synthesize(g);
  for_all_assignments(m, 2, [&](std::span<const Word> in) {
    CHECK(evaluate(e, in) == circ(in[0], in[1]));
  });
}

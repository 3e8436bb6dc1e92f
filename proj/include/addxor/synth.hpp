// Constructive synthesis: from a canonical weight-<=1 polynomial to an
// explicit add/xor expression, via commutator trees and product terms.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "addxor/anf.hpp"
#include "addxor/expr.hpp"
#include "addxor/word.hpp"

namespace addxor {

// A multiple commutator: a leaf is a variable, an inner node is [left,
// right]. Complexity (leaf count) and depth are fixed at construction so
// deep trees never need recursive measurement.
class CommutatorTree;
using TreePtr = std::shared_ptr<const CommutatorTree>;

class CommutatorTree {
 public:
  static TreePtr leaf(int var);
  static TreePtr node(TreePtr left, TreePtr right);

  bool is_leaf() const { return !left_; }
  int var() const { return var_; }
  const TreePtr& left() const { return left_; }
  const TreePtr& right() const { return right_; }
  std::uint64_t complexity() const { return complexity_; }
  int depth() const { return depth_; }

 private:
  CommutatorTree(int var, TreePtr left, TreePtr right,
                 std::uint64_t complexity, int depth)
      : var_(var), left_(std::move(left)), right_(std::move(right)),
        complexity_(complexity), depth_(depth) {}

  int var_;
  TreePtr left_, right_;
  std::uint64_t complexity_;
  int depth_;
};

inline std::uint64_t complexity(const TreePtr& t) { return t->complexity(); }
inline int depth(const TreePtr& t) { return t->depth(); }

// Total structural order: complexity first, then leaves before nodes, then
// variable index / child-wise recursion. Used only to fix deterministic
// choices during synthesis.
int tree_compare(const TreePtr& a, const TreePtr& b);

// Evaluates the commutator tree over words: leaf is the variable's value,
// node is commutator(left, right).
Word eval_tree(const TreePtr& t, std::span<const Word> inputs);

// One factor 2^shift * tree of a conjunction product.
struct ProductFactor {
  int shift;
  TreePtr tree;
};

// A conjunction of shifted commutator trees, with the dyadic side condition
// sum of 2^-shift over factors <= 1. Factors are kept sorted by (shift,
// tree structure); duplicates are allowed (conjunction is idempotent).
class ProductTerm {
 public:
  // Validates the side condition against the modulus: shifts must lie in
  // [0, kappa) and the scaled sum must not exceed 2^(kappa-1).
  ProductTerm(std::vector<ProductFactor> factors, Modulus m);

  const std::vector<ProductFactor>& factors() const { return factors_; }
  Modulus modulus() const { return mod_; }

  // Scaled by 2^(kappa-1): the side-condition sum as an exact integer.
  std::uint64_t scaled_sum() const;

 private:
  std::vector<ProductFactor> factors_;
  Modulus mod_;
};

// The tree spelled out over the base signature: a leaf becomes its variable,
// a node [u, v] becomes (U ^ V) ^ (U + V), and the shift is applied as
// shift-fold doubling Add(e, e).
ExprPtr expr_of_commutator(const TreePtr& t, int shift);

constexpr std::uint64_t default_rewrite_budget = std::uint64_t{1} << 20;

// Synthesizes an add/xor expression whose truth table equals the one induced
// by g. Per monomial, factors (var, shift) become a product of shifted
// leaves; a product is then reduced by (a) dropping terms containing a tree
// of complexity >= q (such commutators vanish identically), (b) emitting
// single factors directly, (c) padding the dyadic sum up to exactly 1 with
// idempotent duplicates of the maximal-shift factor, and (d) rewriting the
// two maximal-shift factors (2^k u)(2^k v) into the commutator w = [u, v]
// via 2^(k-1) w ^ (2^k w)(2^k u) ^ (2^k w)(2^k v), recursing on all three.
// The lexicographic measure (factor count, -sum of complexities) strictly
// decreases at every rewrite; the budget caps the number of rewrites (the
// construction is exponential in kappa in the worst case) and overrunning
// it throws cap_exceeded.
ExprPtr synthesize(const CanonicalPoly& g,
                   std::uint64_t rewrite_budget = default_rewrite_budget);

}  // namespace addxor

#include "addxor/synth.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "addxor/errors.hpp"

namespace addxor {

TreePtr CommutatorTree::leaf(int var) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  return TreePtr(new CommutatorTree(var, nullptr, nullptr, 1, 0));
}

TreePtr CommutatorTree::node(TreePtr left, TreePtr right) {
  if (!left || !right) throw std::invalid_argument("null subtree");
  const std::uint64_t c = left->complexity() + right->complexity();
  const int d = std::max(left->depth(), right->depth()) + 1;
  return TreePtr(new CommutatorTree(-1, std::move(left), std::move(right),
                                    c, d));
}

int tree_compare(const TreePtr& a, const TreePtr& b) {
  if (a == b) return 0;
  if (a->complexity() != b->complexity())
    return a->complexity() < b->complexity() ? -1 : 1;
  if (a->is_leaf() != b->is_leaf()) return a->is_leaf() ? -1 : 1;
  if (a->is_leaf()) {
    if (a->var() != b->var()) return a->var() < b->var() ? -1 : 1;
    return 0;
  }
  if (int c = tree_compare(a->left(), b->left())) return c;
  return tree_compare(a->right(), b->right());
}

namespace {

// Distinct nodes, children before parents.
std::vector<const CommutatorTree*> tree_postorder(const CommutatorTree* root) {
  std::vector<const CommutatorTree*> order, stack{root};
  std::unordered_map<const CommutatorTree*, bool> state;
  while (!stack.empty()) {
    const CommutatorTree* n = stack.back();
    auto it = state.find(n);
    if (it == state.end()) {
      state.emplace(n, false);
      if (!n->is_leaf()) {
        stack.push_back(n->left().get());
        stack.push_back(n->right().get());
      }
    } else if (!it->second) {
      it->second = true;
      order.push_back(n);
      stack.pop_back();
    } else {
      stack.pop_back();
    }
  }
  return order;
}

}  // namespace

Word eval_tree(const TreePtr& t, std::span<const Word> inputs) {
  if (!t) throw std::invalid_argument("null tree");
  if (inputs.empty())
    throw std::invalid_argument("evaluation needs at least one input");
  std::unordered_map<const CommutatorTree*, Word> memo;
  for (const CommutatorTree* n : tree_postorder(t.get())) {
    if (n->is_leaf()) {
      if (n->var() >= static_cast<int>(inputs.size()))
        throw std::invalid_argument("tree references variable " +
                                    std::to_string(n->var()) + " but only " +
                                    std::to_string(inputs.size()) +
                                    " inputs were given");
      memo.emplace(n, inputs[n->var()]);
    } else {
      memo.emplace(n, commutator(memo.at(n->left().get()),
                                 memo.at(n->right().get())));
    }
  }
  return memo.at(t.get());
}

ProductTerm::ProductTerm(std::vector<ProductFactor> factors, Modulus m)
    : factors_(std::move(factors)), mod_(m) {
  if (factors_.empty()) throw std::invalid_argument("empty product term");
  for (const ProductFactor& f : factors_) {
    if (!f.tree) throw std::invalid_argument("null factor tree");
    if (f.shift < 0 || f.shift >= m.kappa())
      throw std::out_of_range("factor shift " + std::to_string(f.shift) +
                              " outside [0, " + std::to_string(m.kappa()) +
                              ")");
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const ProductFactor& a, const ProductFactor& b) {
              if (a.shift != b.shift) return a.shift < b.shift;
              return tree_compare(a.tree, b.tree) < 0;
            });
  if (scaled_sum() > m.q() / 2)
    throw weight_error("product term violates the dyadic side condition");
}

std::uint64_t ProductTerm::scaled_sum() const {
  std::uint64_t s = 0;
  for (const ProductFactor& f : factors_)
    s += std::uint64_t{1} << (mod_.kappa() - 1 - f.shift);
  return s;
}

ExprPtr expr_of_commutator(const TreePtr& t, int shift) {
  if (!t) throw std::invalid_argument("null tree");
  if (shift < 0) throw std::invalid_argument("negative shift");
  std::unordered_map<const CommutatorTree*, ExprPtr> memo;
  for (const CommutatorTree* n : tree_postorder(t.get())) {
    if (n->is_leaf()) {
      memo.emplace(n, Expr::make_var(n->var()));
    } else {
      const ExprPtr& u = memo.at(n->left().get());
      const ExprPtr& v = memo.at(n->right().get());
      memo.emplace(n, Expr::make_xor(Expr::make_xor(u, v),
                                     Expr::make_add(u, v)));
    }
  }
  ExprPtr e = memo.at(t.get());
  for (int i = 0; i < shift; ++i) e = Expr::make_add(e, e);
  return e;
}

namespace {

// Shared workspace of one synthesize() call: hash-consed trees (so
// structural equality is pointer equality), a memo over canonical terms,
// shared expression expansions of trees, and the rewrite budget.
class SynthContext {
 public:
  SynthContext(Modulus m, std::uint64_t budget) : mod_(m), budget_(budget) {}

  TreePtr leaf(int var) {
    TreePtr& slot = leaves_[var];
    if (!slot) slot = CommutatorTree::leaf(var);
    return slot;
  }

  TreePtr node(const TreePtr& l, const TreePtr& r) {
    TreePtr& slot = nodes_[{l.get(), r.get()}];
    if (!slot) slot = CommutatorTree::node(l, r);
    return slot;
  }

  // nullopt means the term is identically zero.
  std::optional<ExprPtr> synth_term(const ProductTerm& term) {
    if (++depth_ > max_depth)
      throw cap_exceeded("synthesis recursion too deep");
    auto result = synth_term_inner(term);
    --depth_;
    return result;
  }

 private:
  static constexpr int max_depth = 16384;

  // Like expr_of_commutator, but the expansion memo persists for the whole
  // call, so each distinct interned tree costs O(1) new nodes.
  ExprPtr expr_of(const TreePtr& t, int shift) {
    std::vector<const CommutatorTree*> stack{t.get()};
    while (!stack.empty()) {
      const CommutatorTree* n = stack.back();
      if (tree_expr_.contains(n)) {
        stack.pop_back();
        continue;
      }
      if (n->is_leaf()) {
        tree_expr_.emplace(n, Expr::make_var(n->var()));
        stack.pop_back();
        continue;
      }
      auto li = tree_expr_.find(n->left().get());
      auto ri = tree_expr_.find(n->right().get());
      if (li != tree_expr_.end() && ri != tree_expr_.end()) {
        tree_expr_.emplace(
            n, Expr::make_xor(Expr::make_xor(li->second, ri->second),
                              Expr::make_add(li->second, ri->second)));
        stack.pop_back();
      } else {
        if (li == tree_expr_.end()) stack.push_back(n->left().get());
        if (ri == tree_expr_.end()) stack.push_back(n->right().get());
      }
    }
    ExprPtr e = tree_expr_.at(t.get());
    for (int i = 0; i < shift; ++i) {
      ExprPtr& slot = shifted_expr_[{t.get(), i + 1}];
      if (!slot) slot = Expr::make_add(e, e);
      e = slot;
    }
    return e;
  }

  using Key = std::vector<std::pair<int, const CommutatorTree*>>;

  Key key_of(const ProductTerm& term) const {
    Key k;
    k.reserve(term.factors().size());
    for (const ProductFactor& f : term.factors())
      k.emplace_back(f.shift, f.tree.get());
    return k;
  }

  static std::uint64_t complexity_sum(const ProductTerm& term) {
    std::uint64_t s = 0;
    for (const ProductFactor& f : term.factors()) s += f.tree->complexity();
    return s;
  }

  std::optional<ExprPtr> synth_term_inner(const ProductTerm& term) {
    const Key key = key_of(term);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<ExprPtr> result = compute(term);
    memo_.emplace(key, result);
    return result;
  }

  std::optional<ExprPtr> compute(const ProductTerm& term) {
    const std::uint32_t q = mod_.q();
    // (a) a factor of complexity >= q evaluates to zero identically
    for (const ProductFactor& f : term.factors())
      if (f.tree->complexity() >= q) return std::nullopt;
    // (b) a single factor is directly expressible
    if (term.factors().size() == 1) {
      const ProductFactor& f = term.factors().front();
      return expr_of(f.tree, f.shift);
    }
    // (c) pad the dyadic sum up to exactly 1 with copies of the canonical
    // maximal-shift factor (idempotent under conjunction)
    std::vector<ProductFactor> factors = term.factors();
    const int k = factors.back().shift;  // sorted: maximal shift last
    const std::uint64_t scaled = term.scaled_sum();
    const std::uint64_t target = q / 2;
    if (scaled < target) {
      const std::size_t first_max =
          static_cast<std::size_t>(std::find_if(factors.begin(),
                                                factors.end(),
                                                [k](const ProductFactor& f) {
                                                  return f.shift == k;
                                                }) -
                                   factors.begin());
      const std::uint64_t s = (target - scaled) >> (mod_.kappa() - 1 - k);
      for (std::uint64_t i = 0; i < s; ++i)
        factors.push_back(factors[first_max]);
    }
    const ProductTerm padded(std::move(factors), mod_);
    // (d) the two largest shifts are now equal (dyadic parity); rewrite
    // (2^k u)(2^k v) = 2^(k-1)[u,v] ^ (2^k [u,v])(2^k u) ^ (2^k [u,v])(2^k v)
    const auto& fs = padded.factors();
    std::size_t i0 = fs.size();
    while (i0 > 0 && fs[i0 - 1].shift == fs.back().shift) --i0;
    if (fs.size() - i0 < 2 || fs.back().shift < 1)
      throw std::logic_error("padded term lost the dyadic parity property");
    const TreePtr u = fs[i0].tree;
    const TreePtr v = fs[i0 + 1].tree;
    const int kk = fs[i0].shift;
    std::vector<ProductFactor> rest;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (i != i0 && i != i0 + 1) rest.push_back(fs[i]);

    // the budget is charged per factor touched, which also bounds memory
    const std::uint64_t cost = padded.factors().size();
    if (budget_ < cost)
      throw cap_exceeded(
          "synthesis rewrite budget exhausted (the construction is "
          "exponential in kappa)");
    budget_ -= cost;

    const TreePtr w = node(u, v);
    const auto child = [&](std::vector<ProductFactor> add_on) {
      std::vector<ProductFactor> fs2 = rest;
      fs2.insert(fs2.end(), add_on.begin(), add_on.end());
      ProductTerm t(std::move(fs2), mod_);
      // the (factor count, -complexity sum) measure must strictly decrease
      const bool less =
          t.factors().size() < padded.factors().size() ||
          (t.factors().size() == padded.factors().size() &&
           complexity_sum(t) > complexity_sum(padded));
      if (!less) throw std::logic_error("synthesis measure did not decrease");
      return synth_term(t);
    };

    std::optional<ExprPtr> t1 = child({{kk - 1, w}});
    if (u == v)  // the other two children are equal and cancel
      return t1;
    std::optional<ExprPtr> t2 = child({{kk, w}, {kk, u}});
    std::optional<ExprPtr> t3 = child({{kk, w}, {kk, v}});
    std::optional<ExprPtr> acc = t1;
    for (auto* t : {&t2, &t3}) {
      if (!*t) continue;
      acc = acc ? Expr::make_xor(*acc, **t) : *t;
    }
    return acc;
  }

  Modulus mod_;
  std::uint64_t budget_;
  int depth_ = 0;
  std::map<int, TreePtr> leaves_;
  std::map<std::pair<const void*, const void*>, TreePtr> nodes_;
  std::map<Key, std::optional<ExprPtr>> memo_;
  std::unordered_map<const CommutatorTree*, ExprPtr> tree_expr_;
  std::map<std::pair<const CommutatorTree*, int>, ExprPtr> shifted_expr_;
};

}  // namespace

ExprPtr synthesize(const CanonicalPoly& g, std::uint64_t rewrite_budget) {
  const Modulus m = g.modulus();
  SynthContext ctx(m, rewrite_budget);
  std::optional<ExprPtr> acc;
  for (const Monomial& mon : g.monomials()) {  // canonical order
    std::vector<ProductFactor> factors;
    factors.reserve(mon.factors().size());
    for (const VarShift& f : mon.factors())
      factors.push_back({f.shift, ctx.leaf(f.var)});
    std::optional<ExprPtr> term =
        ctx.synth_term(ProductTerm(std::move(factors), m));
    if (!term) continue;
    acc = acc ? Expr::make_xor(*acc, *term) : *term;
  }
  return acc ? *acc : zero_expr();
}

}  // namespace addxor

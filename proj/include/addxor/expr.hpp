// Expression ASTs over the signature (+, ^): immutable shared nodes, a
// recursive-descent parser for the CLI grammar, evaluation, and rendering.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addxor/anf.hpp"
#include "addxor/word.hpp"

namespace addxor {

enum class ExprKind { var, add, bxor };

// One AST node. Nodes are immutable and freely shared, so expressions form
// DAGs; algorithms must therefore be memoized by node address, and rendered
// text can be much larger than the node count.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  static ExprPtr make_var(int index);
  static ExprPtr make_add(ExprPtr left, ExprPtr right);
  static ExprPtr make_xor(ExprPtr left, ExprPtr right);

  ExprKind kind() const { return kind_; }
  int var() const { return var_; }
  const ExprPtr& left() const { return left_; }
  const ExprPtr& right() const { return right_; }

 private:
  Expr(ExprKind kind, int var, ExprPtr left, ExprPtr right)
      : kind_(kind), var_(var), left_(std::move(left)),
        right_(std::move(right)) {}

  ExprKind kind_;
  int var_;
  ExprPtr left_, right_;
};

// The canonical expression for the constant zero function. The signature has
// no constants, so it is spelled with variable 0 (arity at least 1).
ExprPtr zero_expr();

// 1 + the largest variable index mentioned.
int arity_of(const ExprPtr& e);

// Sorted distinct variable indices mentioned.
std::vector<int> variables_of(const ExprPtr& e);

// Bottom-up evaluation with word-core add/xor; iterative and memoized per
// node, so shared subtrees are evaluated once. Throws std::invalid_argument
// if a variable index is outside the input tuple.
Word evaluate(const ExprPtr& e, std::span<const Word> inputs);

// Evaluates e on every input tuple of the given arity (row-major order,
// first argument most significant). arity must cover every variable.
TruthTable table_of(const ExprPtr& e, Modulus m, int arity);

// Precedence-aware text: " ^ " chains at the top, " + " chains below,
// parentheses only around a xor inside an add. Output re-parses to an
// expression with the identical truth table.
std::string render(const ExprPtr& e);

// Replaces variable i by replacements[i]; shared nodes are rewritten once.
ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacements);

// The `n*e` sugar: n reduced mod q; 0*e is Xor(e, e); otherwise a doubling
// chain (most significant bit first), so 3*x is Add(Add(x, x), x).
ExprPtr multiple_add(const ExprPtr& e, std::uint64_t n, Modulus m);

// Parses the CLI grammar:
//   expr := xorchain ; xorchain := addchain ( "^" addchain )* ;
//   addchain := atom ( "+" atom )* ;
//   atom := var | int "*" atom | "[" expr "," expr "]"
//         | "circ(" expr "," expr ")" | "(" expr ")" ;
// "^" binds looser than "+"; whitespace is insignificant. Sugar is expanded
// at parse time: n*e as above, [a,b] to (a^b)^(a+b), and circ(a,b) to an
// add/xor expression computing 2(a AND b) (synthesized; see synth module).
// Byte offsets in errors are relative to `text` plus offset_base.
ExprPtr parse(std::string_view text, Modulus m, std::size_t offset_base = 0);

}  // namespace addxor

// Identity checking over Z_q by two independent methods, the xor/circ ring
// machinery (nilpotency, the commutator formula, addition recovered inside
// the ring), and basis emission at q = 2.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addxor/expr.hpp"
#include "addxor/word.hpp"

namespace addxor {

// An equation lhs = rhs between expressions sharing one variable namespace.
struct Identity {
  ExprPtr lhs;
  ExprPtr rhs;
  int arity;
  Modulus mod;
};

// Splits on the single '=' and parses both sides over the same modulus;
// arity covers every variable mentioned on either side.
Identity parse_identity(std::string_view text, Modulus m);

// Renders "lhs = rhs" in the expression grammar.
std::string render_identity(const Identity& id);

struct CheckResult {
  bool holds;
  // First counterexample in row-major assignment order, when !holds and the
  // check is pointwise (the normal-form check carries no assignment).
  std::vector<Word> assignment;
  std::optional<Word> lhs_value, rhs_value;

  // "HOLDS", or "FAILS  x=1, y=1  lhs=2  rhs=0".
  std::string describe() const;
};

// Evaluates both sides on all q^arity assignments.
CheckResult check_identity(const Identity& id);

// Independent method: computes both truth tables, derives each side's
// canonical polynomial (both sides are add/xor expressions, so they must be
// accepted — a rejection throws verification_error), and compares the
// polynomials. Must agree with check_identity on every identity.
CheckResult check_identity_nf(const Identity& id);

// --- The ring (Z_q, ^, o) with x o y = 2(x & y) ---------------------------

enum class RingKind { var, bxor, circ };

class RingExpr;
using RingPtr = std::shared_ptr<const RingExpr>;

class RingExpr {
 public:
  static RingPtr make_var(int index);
  static RingPtr make_xor(RingPtr left, RingPtr right);
  static RingPtr make_circ(RingPtr left, RingPtr right);

  RingKind kind() const { return kind_; }
  int var() const { return var_; }
  const RingPtr& left() const { return left_; }
  const RingPtr& right() const { return right_; }

 private:
  RingExpr(RingKind kind, int var, RingPtr left, RingPtr right)
      : kind_(kind), var_(var), left_(std::move(left)),
        right_(std::move(right)) {}

  RingKind kind_;
  int var_;
  RingPtr left_, right_;
};

Word eval_ring(const RingPtr& e, std::span<const Word> inputs);

// Text in the expression-grammar vocabulary: xor as " ^ ", products as
// "circ(a,b)", so report lines can be fed back to the identity checker.
std::string render_ring(const RingPtr& e);

// One verified ring property.
struct RingAxiomLine {
  std::string name;
  bool pass;
  bool exhaustive;     // false when the modulus forces sampling
  std::string detail;  // witness on failure, extra info otherwise
};

struct RingReport {
  std::vector<RingAxiomLine> lines;
  int minimal_vanishing_length;  // left-bracketed products of this many
                                 // factors always vanish; shorter ones don't
  bool all_pass;

  std::string to_text() const;
};

// Confirms: (Z_q, ^) is an abelian group of exponent 2; circ is commutative
// and distributes over ^; annihilation circ(x, y^y) = 0; left-bracketed
// circ-products of kappa+1 factors all vanish (with the minimal such length
// reported). Binary axioms are exhaustive for every allowed q; the ternary
// ones are exhaustive for q <= 1024 and deterministically sampled above.
// Requires q <= 4096.
RingReport verify_ring_axioms(Modulus m);

// f_1 = circ(x,y); f_{k+1} = f_k ^ circ(...circ(circ(x,y), x^y)..., x^y)
// with k trailing x^y factors, brackets to the left.
RingPtr build_fk(int k, Modulus m);

// The minimal k <= kappa with f_k(x,y) = commutator(x,y) for all pairs,
// verified exhaustively. Requires q <= 1024; throws verification_error if
// no k <= kappa works (never, unless the library is broken).
int verify_commutator_formula(Modulus m);

// x ^ y ^ f_k(x,y) with the minimal verified k; checked exhaustively equal
// to add(x,y) before returning.
RingPtr express_add_in_ring(Modulus m);

// For q = 2: fixes the synthesized representative expression of each of the
// four binary algebraic functions and emits one identity per entry of the
// two operation tables (all add entries, then all xor entries; left operand
// major). Every emitted identity holds. For q >= 4 throws
// unsupported_modulus reporting the free-algebra size that makes emission
// infeasible.
std::vector<Identity> emit_basis(Modulus m);

}  // namespace addxor

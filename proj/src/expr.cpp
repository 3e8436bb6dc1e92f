#include "addxor/expr.hpp"

#include <array>
#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "addxor/errors.hpp"
#include "addxor/synth.hpp"
#include "addxor/varnames.hpp"

namespace addxor {

ExprPtr Expr::make_var(int index) {
  if (index < 0 || index >= max_arity)
    throw std::invalid_argument("variable index " + std::to_string(index) +
                                " outside [0, " + std::to_string(max_arity) +
                                ")");
  return ExprPtr(new Expr(ExprKind::var, index, nullptr, nullptr));
}

ExprPtr Expr::make_add(ExprPtr left, ExprPtr right) {
  if (!left || !right) throw std::invalid_argument("null operand");
  return ExprPtr(
      new Expr(ExprKind::add, -1, std::move(left), std::move(right)));
}

ExprPtr Expr::make_xor(ExprPtr left, ExprPtr right) {
  if (!left || !right) throw std::invalid_argument("null operand");
  return ExprPtr(
      new Expr(ExprKind::bxor, -1, std::move(left), std::move(right)));
}

ExprPtr zero_expr() {
  static const ExprPtr zero = Expr::make_xor(Expr::make_var(0),
                                             Expr::make_var(0));
  return zero;
}

namespace {

// Distinct nodes of the DAG, children before parents.
std::vector<const Expr*> postorder(const Expr* root) {
  std::vector<const Expr*> order, stack{root};
  std::unordered_map<const Expr*, bool> done;  // false: children pending
  while (!stack.empty()) {
    const Expr* n = stack.back();
    auto it = done.find(n);
    if (it == done.end()) {
      done.emplace(n, false);
      if (n->kind() != ExprKind::var) {
        stack.push_back(n->left().get());
        stack.push_back(n->right().get());
      }
    } else if (!it->second) {
      it->second = true;
      order.push_back(n);
      stack.pop_back();
    } else {
      stack.pop_back();  // shared node already emitted
    }
  }
  return order;
}

}  // namespace

int arity_of(const ExprPtr& e) {
  if (!e) throw std::invalid_argument("null expression");
  int max_index = 0;
  for (const Expr* n : postorder(e.get()))
    if (n->kind() == ExprKind::var && n->var() > max_index)
      max_index = n->var();
  return max_index + 1;
}

std::vector<int> variables_of(const ExprPtr& e) {
  if (!e) throw std::invalid_argument("null expression");
  std::array<bool, max_arity> seen{};
  for (const Expr* n : postorder(e.get()))
    if (n->kind() == ExprKind::var) seen[n->var()] = true;
  std::vector<int> out;
  for (int v = 0; v < max_arity; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

Word evaluate(const ExprPtr& e, std::span<const Word> inputs) {
  if (!e) throw std::invalid_argument("null expression");
  if (inputs.empty())
    throw std::invalid_argument("evaluation needs at least one input");
  const Modulus m = inputs[0].modulus();
  for (const Word& w : inputs)
    if (w.modulus() != m)
      throw modulus_mismatch("inputs carry different moduli");

  std::unordered_map<const Expr*, Word> memo;
  for (const Expr* n : postorder(e.get())) {
    if (n->kind() == ExprKind::var) {
      if (n->var() >= static_cast<int>(inputs.size()))
        throw std::invalid_argument(
            "expression references " + var_name(n->var()) + " but only " +
            std::to_string(inputs.size()) + " inputs were given");
      memo.emplace(n, inputs[n->var()]);
    } else {
      const Word l = memo.at(n->left().get());
      const Word r = memo.at(n->right().get());
      memo.emplace(n, n->kind() == ExprKind::add ? add(l, r) : bxor(l, r));
    }
  }
  return memo.at(e.get());
}

TruthTable table_of(const ExprPtr& e, Modulus m, int arity) {
  if (arity < arity_of(e))
    throw std::invalid_argument("expression needs arity " +
                                std::to_string(arity_of(e)) + ", got " +
                                std::to_string(arity));
  return TruthTable::from_function(
      m, arity, [&](std::span<const std::uint32_t> raw) {
        std::vector<Word> inputs;
        inputs.reserve(raw.size());
        for (std::uint32_t v : raw) inputs.emplace_back(v, m);
        return evaluate(e, inputs).value();
      });
}

std::string render(const ExprPtr& e) {
  if (!e) throw std::invalid_argument("null expression");
  struct Item {
    const Expr* node;  // nullptr when this is a literal
    bool in_add;
    const char* lit;
  };
  std::string out;
  std::vector<Item> stack{{e.get(), false, nullptr}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.lit) {
      out += it.lit;
      continue;
    }
    const Expr* n = it.node;
    switch (n->kind()) {
      case ExprKind::var:
        out += var_name(n->var());
        break;
      case ExprKind::add:
        stack.push_back({n->right().get(), true, nullptr});
        stack.push_back({nullptr, false, " + "});
        stack.push_back({n->left().get(), true, nullptr});
        break;
      case ExprKind::bxor:
        if (it.in_add) stack.push_back({nullptr, false, ")"});
        stack.push_back({n->right().get(), false, nullptr});
        stack.push_back({nullptr, false, " ^ "});
        stack.push_back({n->left().get(), false, nullptr});
        if (it.in_add) stack.push_back({nullptr, false, "("});
        break;
    }
  }
  return out;
}

ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacements) {
  if (!e) throw std::invalid_argument("null expression");
  for (const ExprPtr& r : replacements)
    if (!r) throw std::invalid_argument("null replacement");
  std::unordered_map<const Expr*, ExprPtr> memo;
  for (const Expr* n : postorder(e.get())) {
    if (n->kind() == ExprKind::var) {
      if (n->var() >= static_cast<int>(replacements.size()))
        throw std::invalid_argument("no replacement for " +
                                    var_name(n->var()));
      memo.emplace(n, replacements[n->var()]);
    } else {
      const ExprPtr& l = memo.at(n->left().get());
      const ExprPtr& r = memo.at(n->right().get());
      memo.emplace(n, n->kind() == ExprKind::add ? Expr::make_add(l, r)
                                                 : Expr::make_xor(l, r));
    }
  }
  return memo.at(e.get());
}

ExprPtr multiple_add(const ExprPtr& e, std::uint64_t n, Modulus m) {
  if (!e) throw std::invalid_argument("null expression");
  n &= m.mask();
  if (n == 0) return Expr::make_xor(e, e);
  int msb = 0;
  while (n >> (msb + 1)) ++msb;
  ExprPtr acc = e;
  for (int b = msb - 1; b >= 0; --b) {
    acc = Expr::make_add(acc, acc);
    if (n >> b & 1) acc = Expr::make_add(acc, e);
  }
  return acc;
}

// --- parser ---------------------------------------------------------------

namespace {

// The synthesized skeleton of circ(x, y) for each kappa, shared by every
// parse; synthesis of the same polynomial is deterministic, so caching is
// observationally pure.
ExprPtr circ_skeleton(Modulus m) {
  static std::mutex mu;
  static std::array<ExprPtr, Modulus::max_kappa + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  ExprPtr& slot = cache[m.kappa()];
  if (!slot)
    slot = synthesize(
        CanonicalPoly(m, 2, {Monomial({{0, 1}, {1, 1}})}));
  return slot;
}

struct Token {
  enum Type {
    ident,
    number,
    plus,
    caret,
    star,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    end
  };
  Type type;
  std::string_view text;
  std::size_t offset;
  std::uint64_t value = 0;  // for number, already reduced mod q
};

class Parser {
 public:
  Parser(std::string_view text, Modulus m, std::size_t base)
      : text_(text), mod_(m), base_(base) {
    advance();
  }

  ExprPtr run() {
    ExprPtr e = parse_xor();
    if (cur_.type != Token::end) fail("unexpected trailing input");
    return e;
  }

 private:
  static constexpr int max_depth = 4096;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, base_ + cur_.offset);
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    cur_.offset = pos_;
    if (pos_ == text_.size()) {
      cur_.type = Token::end;
      cur_.text = {};
      return;
    }
    const char c = text_[pos_];
    const auto single = [&](Token::Type t) {
      cur_.type = t;
      cur_.text = text_.substr(pos_, 1);
      ++pos_;
    };
    switch (c) {
      case '+': return single(Token::plus);
      case '^': return single(Token::caret);
      case '*': return single(Token::star);
      case '(': return single(Token::lparen);
      case ')': return single(Token::rparen);
      case '[': return single(Token::lbracket);
      case ']': return single(Token::rbracket);
      case ',': return single(Token::comma);
      default: break;
    }
    if (c >= '0' && c <= '9') {
      std::size_t start = pos_;
      std::uint64_t value = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        value = (value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) %
                mod_.q();
        ++pos_;
      }
      cur_.type = Token::number;
      cur_.text = text_.substr(start, pos_ - start);
      cur_.value = value;
      return;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9')))
        ++pos_;
      cur_.type = Token::ident;
      cur_.text = text_.substr(start, pos_ - start);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void expect(Token::Type t, const std::string& what) {
    if (cur_.type != t) fail("expected " + what);
    advance();
  }

  ExprPtr parse_xor() {
    ExprPtr e = parse_add();
    while (cur_.type == Token::caret) {
      advance();
      e = Expr::make_xor(std::move(e), parse_add());
    }
    return e;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_atom();
    while (cur_.type == Token::plus) {
      advance();
      e = Expr::make_add(std::move(e), parse_atom());
    }
    return e;
  }

  ExprPtr parse_atom() {
    if (++depth_ > max_depth) fail("expression nesting too deep");
    ExprPtr result = parse_atom_inner();
    --depth_;
    return result;
  }

  ExprPtr parse_atom_inner() {
    switch (cur_.type) {
      case Token::number: {
        const std::uint64_t n = cur_.value;
        advance();
        expect(Token::star, "'*' after integer literal");
        return multiple_add(parse_atom(), n, mod_);
      }
      case Token::ident: {
        if (cur_.text == "circ") {
          advance();
          expect(Token::lparen, "'(' after circ");
          ExprPtr a = parse_xor();
          expect(Token::comma, "','");
          ExprPtr b = parse_xor();
          expect(Token::rparen, "')'");
          return desugar_circ(std::move(a), std::move(b));
        }
        const auto index = var_index_of(cur_.text);
        if (!index)
          fail("unknown variable '" + std::string(cur_.text) + "'");
        advance();
        return Expr::make_var(*index);
      }
      case Token::lbracket: {
        advance();
        ExprPtr a = parse_xor();
        expect(Token::comma, "','");
        ExprPtr b = parse_xor();
        expect(Token::rbracket, "']'");
        return Expr::make_xor(Expr::make_xor(a, b), Expr::make_add(a, b));
      }
      case Token::lparen: {
        advance();
        ExprPtr e = parse_xor();
        expect(Token::rparen, "')'");
        return e;
      }
      default:
        fail("expected a variable, integer multiple, '[', 'circ(' or '('");
    }
  }

  ExprPtr desugar_circ(ExprPtr a, ExprPtr b) {
    const int kappa = mod_.kappa();
    if (kappa == 1)  // 2(a & b) = 0 mod 2; keep both operands in the tree
      return Expr::make_xor(Expr::make_xor(a, a), Expr::make_xor(b, b));
    if (kappa > 10) {
      // The synthesized product expression grows exponentially in kappa;
      // past desk scale use the equivalent (a+b) + (q-1)*(a^b), from the
      // carry identity a + b = (a^b) + 2(a&b).
      ExprPtr rest = multiple_add(Expr::make_xor(a, b), mod_.q() - 1, mod_);
      return Expr::make_add(Expr::make_add(std::move(a), std::move(b)),
                            std::move(rest));
    }
    const std::array<ExprPtr, 2> reps{std::move(a), std::move(b)};
    return substitute(circ_skeleton(mod_), reps);
  }

  std::string_view text_;
  Modulus mod_;
  std::size_t base_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Token cur_;
};

}  // namespace

ExprPtr parse(std::string_view text, Modulus m, std::size_t offset_base) {
  return Parser(text, m, offset_base).run();
}

}  // namespace addxor

#include "addxor/identities.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "addxor/errors.hpp"
#include "addxor/expressibility.hpp"
#include "addxor/synth.hpp"
#include "addxor/varnames.hpp"

namespace addxor {

Identity parse_identity(std::string_view text, Modulus m) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos)
    throw parse_error("expected '=' between two expressions", text.size());
  if (text.find('=', eq + 1) != std::string_view::npos)
    throw parse_error("expected exactly one '='", text.find('=', eq + 1));
  ExprPtr lhs = parse(text.substr(0, eq), m, 0);
  ExprPtr rhs = parse(text.substr(eq + 1), m, eq + 1);
  const int arity = std::max(arity_of(lhs), arity_of(rhs));
  return Identity{std::move(lhs), std::move(rhs), arity, m};
}

std::string render_identity(const Identity& id) {
  return render(id.lhs) + " = " + render(id.rhs);
}

std::string CheckResult::describe() const {
  if (holds) return "HOLDS";
  std::string out = "FAILS";
  if (!assignment.empty()) {
    out += "  ";
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (i) out += ", ";
      out += var_name(static_cast<int>(i)) + "=" +
             std::to_string(assignment[i].value());
    }
  }
  if (lhs_value && rhs_value)
    out += "  lhs=" + std::to_string(lhs_value->value()) +
           "  rhs=" + std::to_string(rhs_value->value());
  return out;
}

CheckResult check_identity(const Identity& id) {
  const TruthTable lt = table_of(id.lhs, id.mod, id.arity);
  const TruthTable rt = table_of(id.rhs, id.mod, id.arity);
  for (std::size_t i = 0; i < lt.size(); ++i) {
    if (lt[i] == rt[i]) continue;
    std::vector<Word> assignment;
    for (std::uint32_t raw : lt.args_of(i)) assignment.emplace_back(raw, id.mod);
    return CheckResult{false, std::move(assignment), Word(lt[i], id.mod),
                       Word(rt[i], id.mod)};
  }
  return CheckResult{true, {}, std::nullopt, std::nullopt};
}

CheckResult check_identity_nf(const Identity& id) {
  const Verdict lv = decide_algebraic(table_of(id.lhs, id.mod, id.arity));
  const Verdict rv = decide_algebraic(table_of(id.rhs, id.mod, id.arity));
  if (!lv.algebraic || !rv.algebraic)
    throw verification_error(
        "an add/xor expression produced a non-algebraic table");
  return CheckResult{*lv.witness == *rv.witness, {}, std::nullopt,
                     std::nullopt};
}

// --- ring expressions ------------------------------------------------------

RingPtr RingExpr::make_var(int index) {
  if (index < 0 || index >= max_arity)
    throw std::invalid_argument("variable index out of range");
  return RingPtr(new RingExpr(RingKind::var, index, nullptr, nullptr));
}

RingPtr RingExpr::make_xor(RingPtr left, RingPtr right) {
  if (!left || !right) throw std::invalid_argument("null operand");
  return RingPtr(
      new RingExpr(RingKind::bxor, -1, std::move(left), std::move(right)));
}

RingPtr RingExpr::make_circ(RingPtr left, RingPtr right) {
  if (!left || !right) throw std::invalid_argument("null operand");
  return RingPtr(
      new RingExpr(RingKind::circ, -1, std::move(left), std::move(right)));
}

namespace {

std::vector<const RingExpr*> ring_postorder(const RingExpr* root) {
  std::vector<const RingExpr*> order, stack{root};
  std::unordered_map<const RingExpr*, bool> state;
  while (!stack.empty()) {
    const RingExpr* n = stack.back();
    auto it = state.find(n);
    if (it == state.end()) {
      state.emplace(n, false);
      if (n->kind() != RingKind::var) {
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

Word eval_ring(const RingPtr& e, std::span<const Word> inputs) {
  if (!e) throw std::invalid_argument("null expression");
  if (inputs.empty())
    throw std::invalid_argument("evaluation needs at least one input");
  std::unordered_map<const RingExpr*, Word> memo;
  for (const RingExpr* n : ring_postorder(e.get())) {
    if (n->kind() == RingKind::var) {
      if (n->var() >= static_cast<int>(inputs.size()))
        throw std::invalid_argument("expression references variable " +
                                    var_name(n->var()) + " but only " +
                                    std::to_string(inputs.size()) +
                                    " inputs were given");
      memo.emplace(n, inputs[n->var()]);
    } else {
      const Word l = memo.at(n->left().get());
      const Word r = memo.at(n->right().get());
      memo.emplace(n, n->kind() == RingKind::bxor ? bxor(l, r) : circ(l, r));
    }
  }
  return memo.at(e.get());
}

std::string render_ring(const RingPtr& e) {
  if (!e) throw std::invalid_argument("null expression");
  struct Item {
    const RingExpr* node;
    const char* lit;
  };
  std::string out;
  std::vector<Item> stack{{e.get(), nullptr}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.lit) {
      out += it.lit;
      continue;
    }
    const RingExpr* n = it.node;
    switch (n->kind()) {
      case RingKind::var:
        out += var_name(n->var());
        break;
      case RingKind::bxor:
        stack.push_back({n->right().get(), nullptr});
        stack.push_back({nullptr, " ^ "});
        stack.push_back({n->left().get(), nullptr});
        break;
      case RingKind::circ:
        stack.push_back({nullptr, ")"});
        stack.push_back({n->right().get(), nullptr});
        stack.push_back({nullptr, ","});
        stack.push_back({n->left().get(), nullptr});
        stack.push_back({nullptr, "circ("});
        break;
    }
  }
  return out;
}

// --- ring verification ------------------------------------------------------

namespace {

std::string assignment_text(std::initializer_list<std::uint32_t> values) {
  std::string out;
  int i = 0;
  for (std::uint32_t v : values) {
    if (i) out += ", ";
    out += var_name(i++) + "=" + std::to_string(v);
  }
  return out;
}

}  // namespace

std::string RingReport::to_text() const {
  std::string out;
  for (const RingAxiomLine& line : lines) {
    out += line.name + ": " + (line.pass ? "pass" : "FAIL");
    out += line.exhaustive ? " (exhaustive)" : " (sampled)";
    if (!line.detail.empty()) out += "  " + line.detail;
    out += "\n";
  }
  out += "minimal left-bracketed vanishing length: " +
         std::to_string(minimal_vanishing_length) + "\n";
  out += all_pass ? "all ring axioms hold\n" : "RING AXIOMS VIOLATED\n";
  return out;
}

RingReport verify_ring_axioms(Modulus m) {
  if (m.q() > 4096)
    throw unsupported_modulus(
        "ring verification is exhaustive and limited to q <= 4096");
  const std::uint32_t q = m.q();
  const std::uint32_t mask = m.mask();
  const auto circ_raw = [mask](std::uint32_t x, std::uint32_t y) {
    return ((x & y) << 1) & mask;
  };

  RingReport report;
  const bool ternary_exhaustive = q <= 1024;

  // binary sweeps are always exhaustive
  {
    RingAxiomLine line{"xor commutative and exponent 2", true, true, ""};
    for (std::uint32_t x = 0; x < q && line.pass; ++x)
      for (std::uint32_t y = 0; y < q; ++y)
        if ((x ^ y) != (y ^ x) || (x ^ x) != 0u || (x ^ 0u) != x) {
          line.pass = false;
          line.detail = "witness " + assignment_text({x, y});
          break;
        }
    report.lines.push_back(std::move(line));
  }
  {
    RingAxiomLine line{"circ commutative", true, true, ""};
    for (std::uint32_t x = 0; x < q && line.pass; ++x)
      for (std::uint32_t y = 0; y < q; ++y)
        if (circ_raw(x, y) != circ_raw(y, x)) {
          line.pass = false;
          line.detail = "witness " + assignment_text({x, y});
          break;
        }
    report.lines.push_back(std::move(line));
  }
  {
    RingAxiomLine line{"circ annihilates y^y", true, true, ""};
    for (std::uint32_t x = 0; x < q && line.pass; ++x)
      for (std::uint32_t y = 0; y < q; ++y)
        if (circ_raw(x, y ^ y) != 0u) {
          line.pass = false;
          line.detail = "witness " + assignment_text({x, y});
          break;
        }
    report.lines.push_back(std::move(line));
  }

  // ternary sweeps: exhaustive at desk scale, deterministic sample above
  const auto ternary = [&](const char* name, auto&& property) {
    RingAxiomLine line{name, true, ternary_exhaustive, ""};
    if (ternary_exhaustive) {
      for (std::uint32_t x = 0; x < q && line.pass; ++x)
        for (std::uint32_t y = 0; y < q && line.pass; ++y)
          for (std::uint32_t z = 0; z < q; ++z)
            if (!property(x, y, z)) {
              line.pass = false;
              line.detail = "witness " + assignment_text({x, y, z});
              break;
            }
    } else {
      std::mt19937 rng(1);
      std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
      const int samples = 1 << 22;
      for (int i = 0; i < samples; ++i) {
        const std::uint32_t x = pick(rng), y = pick(rng), z = pick(rng);
        if (!property(x, y, z)) {
          line.pass = false;
          line.detail = "witness " + assignment_text({x, y, z});
          break;
        }
      }
      line.detail = line.pass ? "4194304 deterministic samples" : line.detail;
    }
    report.lines.push_back(std::move(line));
  };
  ternary("xor associative", [](std::uint32_t x, std::uint32_t y,
                                std::uint32_t z) {
    return ((x ^ y) ^ z) == (x ^ (y ^ z));
  });
  ternary("circ distributes over xor",
          [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
            return circ_raw(x, y ^ z) == (circ_raw(x, y) ^ circ_raw(x, z));
          });

  // minimal length L with every left-bracketed product of L factors zero:
  // iterate the reachable-value sets S_1 = Z_q, S_{j+1} = S_j circ Z_q
  {
    std::vector<char> cur(q, 1);
    int length = 1;
    const auto all_zero = [&] {
      for (std::uint32_t v = 1; v < q; ++v)
        if (cur[v]) return false;
      return true;
    };
    while (!all_zero()) {
      std::vector<char> next(q, 0);
      for (std::uint32_t s = 0; s < q; ++s) {
        if (!cur[s]) continue;
        for (std::uint32_t a = 0; a < q; ++a) next[circ_raw(s, a)] = 1;
      }
      cur = std::move(next);
      ++length;
    }
    report.minimal_vanishing_length = length;
    RingAxiomLine line{"left-bracketed products vanish", length <= m.kappa() + 1,
                       true,
                       "all products of " + std::to_string(length) +
                           " factors are zero; some product of " +
                           std::to_string(length - 1) + " factors is not"};
    report.lines.push_back(std::move(line));
  }

  report.all_pass = std::all_of(report.lines.begin(), report.lines.end(),
                                [](const RingAxiomLine& l) { return l.pass; });
  return report;
}

RingPtr build_fk(int k, Modulus) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const RingPtr x = RingExpr::make_var(0);
  const RingPtr y = RingExpr::make_var(1);
  const RingPtr xy = RingExpr::make_circ(x, y);
  const RingPtr sxy = RingExpr::make_xor(x, y);
  RingPtr f = xy;
  RingPtr chain = xy;
  for (int j = 2; j <= k; ++j) {
    chain = RingExpr::make_circ(chain, sxy);
    f = RingExpr::make_xor(f, chain);
  }
  return f;
}

int verify_commutator_formula(Modulus m) {
  if (m.q() > 1024)
    throw unsupported_modulus(
        "the commutator formula check is exhaustive and limited to q <= "
        "1024");
  const std::uint32_t q = m.q();
  const std::uint32_t mask = m.mask();
  const auto circ_raw = [mask](std::uint32_t x, std::uint32_t y) {
    return ((x & y) << 1) & mask;
  };
  // f_1 = x circ y; f_{k+1} = f_k ^ (chain circ (x^y)); tables over (x, y)
  std::vector<std::uint32_t> chain(static_cast<std::size_t>(q) * q);
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y)
      chain[static_cast<std::size_t>(x) * q + y] = circ_raw(x, y);
  std::vector<std::uint32_t> f = chain;
  for (int k = 1; k <= m.kappa(); ++k) {
    bool equal = true;
    for (std::uint32_t x = 0; x < q && equal; ++x)
      for (std::uint32_t y = 0; y < q; ++y) {
        const std::uint32_t comm = x ^ y ^ ((x + y) & mask);
        if (f[static_cast<std::size_t>(x) * q + y] != comm) {
          equal = false;
          break;
        }
      }
    if (equal) return k;
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t y = 0; y < q; ++y) {
        const std::size_t i = static_cast<std::size_t>(x) * q + y;
        chain[i] = circ_raw(chain[i], x ^ y);
        f[i] ^= chain[i];
      }
  }
  throw verification_error(
      "no k <= kappa reproduces the commutator; the ring machinery is "
      "broken");
}

RingPtr express_add_in_ring(Modulus m) {
  const int k = verify_commutator_formula(m);
  const RingPtr expr = RingExpr::make_xor(
      RingExpr::make_xor(RingExpr::make_var(0), RingExpr::make_var(1)),
      build_fk(k, m));
  const std::uint32_t q = m.q();
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y) {
      const Word out = eval_ring(expr, std::vector<Word>{Word(x, m),
                                                         Word(y, m)});
      if (out.value() != ((x + y) & m.mask()))
        throw verification_error("ring expression for + disagrees at " +
                                 assignment_text({x, y}));
    }
  return expr;
}

std::vector<Identity> emit_basis(Modulus m) {
  if (m.q() != 2) {
    const BigInt e = free_algebra_exponent(static_cast<int>(m.q()), m);
    throw unsupported_modulus(
        "basis emission is supported only at q = 2: the free algebra on " +
        std::to_string(m.q()) + " variables at q = " + std::to_string(m.q()) +
        " has 2^" + e.str() + " elements");
  }
  const auto elems = enumerate_free_algebra(2, m);
  std::vector<ExprPtr> reps;
  std::map<std::vector<std::uint32_t>, std::size_t> index_by_table;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    reps.push_back(synthesize(elems[i].first));
    index_by_table.emplace(elems[i].second.values(), i);
  }
  std::vector<Identity> out;
  out.reserve(2 * elems.size() * elems.size());
  const auto emit = [&](bool adding) {
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b) {
        const auto& ta = elems[a].second.values();
        const auto& tb = elems[b].second.values();
        std::vector<std::uint32_t> combined(ta.size());
        for (std::size_t i = 0; i < ta.size(); ++i)
          combined[i] = adding ? ((ta[i] + tb[i]) & m.mask()) : (ta[i] ^ tb[i]);
        const std::size_t r = index_by_table.at(combined);
        ExprPtr lhs = adding ? Expr::make_add(reps[a], reps[b])
                             : Expr::make_xor(reps[a], reps[b]);
        out.push_back(Identity{std::move(lhs), reps[r], 2, m});
      }
  };
  emit(true);
  emit(false);
  return out;
}

}  // namespace addxor

#include "addxor/expressibility.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

#include "addxor/errors.hpp"
#include "addxor/word.hpp"

namespace addxor {

std::string Failure::describe() const {
  switch (kind) {
    case FailureKind::free_term:
      return "FreeTerm";
    case FailureKind::weight_exceeded:
      return "WeightExceeded";
    case FailureKind::shift_mismatch:
      return "ShiftMismatch at bit " + std::to_string(bit);
  }
  return "unknown failure";
}

Verdict decide_algebraic(const TruthTable& t) {
  const Modulus m = t.modulus();
  const int top = m.kappa() - 1;

  const BitPolynomial top_poly = bit_polynomial(t, top);
  if (top_poly.has_free_term())
    return {false, std::nullopt, Failure{FailureKind::free_term}};

  // At the most significant bit, a factor on concrete bit j sits at shift
  // top - j, so it contributes 2^j to the scaled weight.
  for (std::uint32_t mask : top_poly.monomial_masks()) {
    std::uint64_t scaled = 0;
    for (const VarShift& f : top_poly.decode_mask(mask))
      scaled += std::uint64_t{1} << f.shift;
    if (scaled > m.q() / 2)
      return {false, std::nullopt, Failure{FailureKind::weight_exceeded}};
  }

  // Walk down one bit at a time; each lower bit must carry exactly the
  // shift-substituted image of the bit above it.
  BitPolynomial expected = top_poly;
  for (int i = top - 1; i >= 0; --i) {
    expected = shift_substitute(expected);
    if (!(bit_polynomial(t, i) == expected))
      return {false, std::nullopt, Failure{FailureKind::shift_mismatch, i}};
  }

  return {true, to_canonical(top_poly, top), std::nullopt};
}

BigInt free_algebra_exponent(int k, Modulus m) {
  if (k < 1) throw std::invalid_argument("arity must be at least 1");
  const BigInt h = m.q() / 2;
  BigInt binom = 1;
  for (int i = 1; i <= k; ++i) {
    binom *= h + i;
    binom /= i;  // exact: the running product is C(h+i, i)
  }
  return binom - 1;
}

BigInt count_free_algebra(int k, Modulus m) {
  const BigInt e = free_algebra_exponent(k, m);
  if (e > (std::uint64_t{1} << 26))
    throw cap_exceeded("cannot materialize 2^" + e.str() +
                       ": exponent too large");
  return BigInt(1) << e.convert_to<unsigned>();
}

namespace {

// Appends every monomial whose per-variable scaled contributions extend
// `chosen` with total at most q/2; bit b of a contribution becomes a factor
// at shift kappa-1-b.
void collect_monomials(int k, Modulus m, int var, std::uint32_t budget,
                       std::vector<std::uint32_t>& chosen,
                       std::vector<Monomial>& out) {
  if (var == k) {
    std::vector<VarShift> factors;
    for (int v = 0; v < k; ++v)
      for (int b = 0; b < m.kappa(); ++b)
        if (chosen[v] >> b & 1) factors.push_back({v, m.kappa() - 1 - b});
    if (!factors.empty()) out.emplace_back(std::move(factors));
    return;
  }
  for (std::uint32_t n = 0; n <= budget; ++n) {
    chosen[var] = n;
    collect_monomials(k, m, var + 1, budget - n, chosen, out);
  }
  chosen[var] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(int k, Modulus m) {
  table_size(m, k);  // same hard guard as every dense-table operation
  std::vector<Monomial> out;
  std::vector<std::uint32_t> chosen(static_cast<std::size_t>(k), 0);
  collect_monomials(k, m, 0, m.q() / 2, chosen, out);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return canonical_monomial_less(a, b, m);
  });
  return out;
}

std::vector<std::pair<CanonicalPoly, TruthTable>> enumerate_free_algebra(
    int k, Modulus m, std::uint64_t cap) {
  const std::vector<Monomial> mons = enumerate_monomials(k, m);
  const std::size_t count = mons.size();
  if (count >= 64 || (std::uint64_t{1} << count) > cap)
    throw cap_exceeded("free algebra has 2^" + std::to_string(count) +
                       " elements, above the enumeration cap");
  const std::uint64_t total = std::uint64_t{1} << count;
  const std::size_t n = table_size(m, k);

  // Tables of the single-monomial functions; a subset's table is their
  // bitwise XOR, maintained incrementally along the binary counter.
  std::vector<std::vector<std::uint32_t>> single;
  single.reserve(count);
  for (const Monomial& mon : mons)
    single.push_back(CanonicalPoly(m, k, {mon}).to_table().values());

  std::vector<std::pair<CanonicalPoly, TruthTable>> out;
  out.reserve(total);
  std::vector<std::uint32_t> cur(n, 0);
  for (std::uint64_t s = 0;; ++s) {
    std::vector<Monomial> selected;
    for (std::size_t t = 0; t < count; ++t)
      if (s >> t & 1) selected.push_back(mons[t]);
    out.emplace_back(CanonicalPoly(m, k, std::move(selected)),
                     TruthTable(m, k, cur));
    if (s + 1 == total) break;
    std::uint64_t flipped = s ^ (s + 1);
    for (std::size_t t = 0; flipped; ++t, flipped >>= 1)
      if (flipped & 1)
        for (std::size_t i = 0; i < n; ++i) cur[i] ^= single[t][i];
  }
  return out;
}

std::vector<TruthTable> closure_oracle(int k, Modulus m, std::uint64_t cap) {
  const std::size_t n = table_size(m, k);
  const int kappa = m.kappa();

  std::vector<std::vector<std::uint32_t>> have;
  std::set<std::vector<std::uint32_t>> seen;
  for (int v = 0; v < k; ++v) {
    std::vector<std::uint32_t> proj(n);
    for (std::size_t i = 0; i < n; ++i)
      proj[i] = static_cast<std::uint32_t>(i >> ((k - 1 - v) * kappa)) &
                m.mask();
    seen.insert(proj);
    have.push_back(std::move(proj));
  }

  std::size_t prev_size = 0;
  while (prev_size < have.size()) {
    const std::size_t cur_size = have.size();
    // Every pair with at least one operand from the newest generation;
    // older pairs were exhausted in earlier rounds.
    std::set<std::vector<std::uint32_t>> fresh;
    for (std::size_t j = prev_size; j < cur_size; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        std::vector<std::uint32_t> sum(n), sym(n);
        for (std::size_t p = 0; p < n; ++p) {
          sum[p] = (have[i][p] + have[j][p]) & m.mask();
          sym[p] = have[i][p] ^ have[j][p];
        }
        if (!seen.contains(sum)) fresh.insert(std::move(sum));
        if (!seen.contains(sym)) fresh.insert(std::move(sym));
      }
    }
    prev_size = cur_size;
    for (const auto& tbl : fresh) {  // std::set iterates in byte order
      seen.insert(tbl);
      have.push_back(tbl);
      if (have.size() > cap)
        throw cap_exceeded("closure grew past the enumeration cap");
    }
  }

  std::vector<TruthTable> out;
  out.reserve(have.size());
  for (auto& tbl : have) out.emplace_back(m, k, std::move(tbl));
  return out;
}

}  // namespace addxor

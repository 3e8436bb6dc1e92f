#include "addxor/anf.hpp"

#include <algorithm>
#include <cassert>

#include "addxor/varnames.hpp"

namespace addxor {

std::size_t table_size(Modulus m, int arity) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  std::size_t n = 1;
  for (int v = 0; v < arity; ++v) {
    if (n > max_table_entries / m.q())
      throw guard_exceeded("table with q^k = " + std::to_string(m.q()) + "^" +
                           std::to_string(arity) + " entries exceeds guard of " +
                           std::to_string(max_table_entries));
    n *= m.q();
  }
  return n;
}

TruthTable::TruthTable(Modulus m, int arity, std::vector<std::uint32_t> values)
    : mod_(m), arity_(arity), values_(std::move(values)) {
  std::size_t expected = table_size(m, arity);
  if (values_.size() != expected)
    throw table_format_error("table has " + std::to_string(values_.size()) +
                             " entries, expected q^k = " +
                             std::to_string(expected));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] >= m.q())
      throw table_format_error("values[" + std::to_string(i) + "] = " +
                               std::to_string(values_[i]) +
                               " out of range [0, " + std::to_string(m.q()) +
                               ")");
}

TruthTable TruthTable::from_function(
    Modulus m, int arity,
    const std::function<std::uint32_t(std::span<const std::uint32_t>)>& fn) {
  std::size_t n = table_size(m, arity);
  std::vector<std::uint32_t> values(n);
  std::vector<std::uint32_t> args(arity, 0);
  for (std::size_t index = 0; index < n; ++index) {
    values[index] = fn(args);
    // advance the tuple odometer, last argument fastest
    for (int v = arity - 1; v >= 0; --v) {
      if (++args[v] < m.q()) break;
      args[v] = 0;
    }
  }
  return TruthTable(m, arity, std::move(values));
}

std::size_t TruthTable::index_of(std::span<const std::uint32_t> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("argument tuple has wrong arity");
  std::size_t index = 0;
  for (std::uint32_t a : args) {
    if (a >= mod_.q()) throw std::out_of_range("argument out of range");
    index = index * mod_.q() + a;
  }
  return index;
}

std::vector<std::uint32_t> TruthTable::args_of(std::size_t index) const {
  std::vector<std::uint32_t> args(arity_);
  for (int v = arity_ - 1; v >= 0; --v) {
    args[v] = static_cast<std::uint32_t>(index % mod_.q());
    index /= mod_.q();
  }
  return args;
}

Monomial::Monomial(std::vector<VarShift> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw std::invalid_argument("monomial must have at least one factor");
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].var < 0 || factors_[i].shift < 0)
      throw std::invalid_argument("monomial factor indices must be >= 0");
    if (i > 0 && factors_[i] == factors_[i - 1])
      throw std::invalid_argument("duplicate factor in monomial");
  }
}

DyadicWeight weight(const Monomial& m, Modulus mod) {
  std::uint32_t scaled = 0;
  for (const VarShift& f : m.factors()) {
    if (f.shift > mod.kappa() - 1)
      throw std::out_of_range("shift " + std::to_string(f.shift) +
                              " out of range for kappa = " +
                              std::to_string(mod.kappa()));
    scaled += std::uint32_t{1} << (mod.kappa() - 1 - f.shift);
  }
  return DyadicWeight{scaled};
}

bool canonical_monomial_less(const Monomial& a, const Monomial& b,
                             Modulus mod) {
  std::uint32_t wa = weight(a, mod).scaled;
  std::uint32_t wb = weight(b, mod).scaled;
  if (wa != wb) return wa > wb;  // graded by scaled weight, heaviest first
  return a.factors() < b.factors();
}

BitPolynomial::BitPolynomial(Modulus m, int arity, bool free_term,
                             std::vector<std::uint32_t> monomial_masks)
    : mod_(m), arity_(arity), free_term_(free_term),
      masks_(std::move(monomial_masks)) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  std::sort(masks_.begin(), masks_.end());
  // reduce: equal masks cancel in pairs over GF(2)
  std::vector<std::uint32_t> reduced;
  for (std::size_t i = 0; i < masks_.size();) {
    std::size_t j = i;
    while (j < masks_.size() && masks_[j] == masks_[i]) ++j;
    if ((j - i) % 2 == 1) {
      if (masks_[i] == 0)
        free_term_ = !free_term_;  // the zero mask is the free term
      else
        reduced.push_back(masks_[i]);
    }
    i = j;
  }
  masks_ = std::move(reduced);
  std::uint32_t limit_bit = static_cast<std::uint32_t>(arity_ * mod_.kappa());
  for (std::uint32_t mask : masks_)
    if (limit_bit < 32 && (mask >> limit_bit) != 0)
      throw std::invalid_argument("monomial mask uses bits beyond k*kappa");
}

std::vector<VarShift> BitPolynomial::decode_mask(std::uint32_t mask) const {
  std::vector<VarShift> out;
  for (int v = 0; v < arity_; ++v)
    for (int j = 0; j < mod_.kappa(); ++j)
      if (mask & (std::uint32_t{1} << mask_bit_position(v, j, arity_,
                                                        mod_.kappa())))
        out.push_back(VarShift{v, j});  // .shift field holds the bit index
  return out;
}

int BitPolynomial::evaluate(std::span<const std::uint32_t> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("argument tuple has wrong arity");
  std::uint32_t index_bits = 0;
  for (std::uint32_t a : args) index_bits = (index_bits << mod_.kappa()) | a;
  int acc = free_term_ ? 1 : 0;
  for (std::uint32_t mask : masks_)
    if ((index_bits & mask) == mask) acc ^= 1;
  return acc;
}

std::string BitPolynomial::render() const {
  if (empty()) return "0";
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += " ^ ";
    out += s;
  };
  for (std::uint32_t mask : masks_) {
    std::string term;
    for (const VarShift& vb : decode_mask(mask)) {
      if (!term.empty()) term += "*";
      term += var_name(vb.var) + std::to_string(vb.shift);
    }
    append(term);
  }
  if (free_term_) append("1");
  return out;
}

BitPolynomial bit_polynomial(const TruthTable& t, int i) {
  if (i < 0 || i >= t.modulus().kappa())
    throw std::out_of_range("bit index out of range");
  std::size_t n = t.size();
  std::vector<std::uint8_t> u(n);
  for (std::size_t m = 0; m < n; ++m)
    u[m] = static_cast<std::uint8_t>((t[m] >> i) & 1u);
  moebius_transform(u);
  bool free_term = u[0] != 0;
  std::vector<std::uint32_t> masks;
  for (std::size_t m = 1; m < n; ++m)
    if (u[m]) masks.push_back(static_cast<std::uint32_t>(m));
  return BitPolynomial(t.modulus(), t.arity(), free_term, std::move(masks));
}

void moebius_transform(std::vector<std::uint8_t>& table) {
  std::size_t n = table.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("table length must be a power of two");
  for (std::size_t step = 1; step < n; step <<= 1)
    for (std::size_t m = 0; m < n; ++m)
      if (m & step) table[m] ^= table[m ^ step];
}

BitPolynomial shift_substitute(const BitPolynomial& p) {
  int kappa = p.modulus().kappa();
  std::uint32_t low_bits = 0;  // the bit-0 position of every argument field
  for (int v = 0; v < p.arity(); ++v)
    low_bits |= std::uint32_t{1}
                << BitPolynomial::mask_bit_position(v, 0, p.arity(), kappa);
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask : p.monomial_masks()) {
    if (mask & low_bits) continue;  // a bit-0 variable substitutes to zero
    masks.push_back(mask >> 1);     // every surviving bit drops one position
  }
  return BitPolynomial(p.modulus(), p.arity(), p.has_free_term(),
                       std::move(masks));
}

CanonicalPoly::CanonicalPoly(Modulus m, int arity,
                             std::vector<Monomial> monomials)
    : mod_(m), arity_(arity), monomials_(std::move(monomials)) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  for (const Monomial& mono : monomials_) {
    for (const VarShift& f : mono.factors())
      if (f.var >= arity_)
        throw std::invalid_argument("monomial variable index " +
                                    std::to_string(f.var) +
                                    " out of range for arity " +
                                    std::to_string(arity_));
    if (!weight(mono, mod_).at_most_one(mod_))
      throw weight_error("monomial weight exceeds 1");
  }
  std::sort(monomials_.begin(), monomials_.end(),
            [&](const Monomial& a, const Monomial& b) {
              return canonical_monomial_less(a, b, mod_);
            });
  // reduce: equal monomials cancel in pairs over GF(2)
  std::vector<Monomial> reduced;
  for (std::size_t i = 0; i < monomials_.size();) {
    std::size_t j = i;
    while (j < monomials_.size() && monomials_[j] == monomials_[i]) ++j;
    if ((j - i) % 2 == 1) reduced.push_back(monomials_[i]);
    i = j;
  }
  monomials_ = std::move(reduced);
}

int CanonicalPoly::eval_bit(std::span<const Word> inputs, int i) const {
  if (static_cast<int>(inputs.size()) != arity_)
    throw std::invalid_argument("input tuple has wrong arity");
  for (const Word& w : inputs)
    if (w.modulus() != mod_) throw modulus_mismatch("input modulus differs");
  int acc = 0;
  for (const Monomial& mono : monomials_) {
    int prod = 1;
    for (const VarShift& f : mono.factors()) {
      prod &= bit(inputs[f.var], i - f.shift);
      if (!prod) break;
    }
    acc ^= prod;
  }
  return acc;
}

TruthTable CanonicalPoly::to_table() const {
  return TruthTable::from_function(
      mod_, arity_, [&](std::span<const std::uint32_t> args) {
        std::vector<Word> inputs;
        inputs.reserve(args.size());
        for (std::uint32_t a : args) inputs.emplace_back(a, mod_);
        std::uint32_t value = 0;
        for (int i = 0; i < mod_.kappa(); ++i)
          value |= static_cast<std::uint32_t>(eval_bit(inputs, i)) << i;
        return value;
      });
}

std::string CanonicalPoly::render() const {
  if (monomials_.empty()) return "0";
  std::string out;
  for (const Monomial& mono : monomials_) {
    if (!out.empty()) out += " ^ ";
    std::string term;
    for (const VarShift& f : mono.factors()) {
      if (!term.empty()) term += "*";
      term += var_name(f.var) + "[" + (f.shift == 0 ? std::string("0")
                                                    : "-" + std::to_string(f.shift)) +
              "]";
    }
    out += term;
  }
  return out;
}

CanonicalPoly to_canonical(const BitPolynomial& p, int i) {
  if (p.has_free_term())
    throw free_term_error("polynomial has a free term");
  std::vector<Monomial> monomials;
  for (std::uint32_t mask : p.monomial_masks()) {
    std::vector<VarShift> factors;
    for (const VarShift& vb : p.decode_mask(mask)) {
      if (vb.shift > i)
        throw std::invalid_argument("concrete bit index exceeds target bit");
      factors.push_back(VarShift{vb.var, i - vb.shift});
    }
    Monomial mono(std::move(factors));
    if (!weight(mono, p.modulus()).at_most_one(p.modulus()))
      throw weight_error("monomial weight exceeds 1");
    monomials.push_back(std::move(mono));
  }
  return CanonicalPoly(p.modulus(), p.arity(), std::move(monomials));
}

int eval_canonical(const CanonicalPoly& g, std::span<const Word> inputs,
                   int i) {
  return g.eval_bit(inputs, i);
}

}  // namespace addxor

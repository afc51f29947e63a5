#pragma once

/**
 * @file qary_function.hpp
 * @brief q-ary functions f: V_L -> Z_q, their restrictions, and the
 *        generalized-quadratic family used by the CCC constructions.
 *
 * A function is stored as its full evaluation table (length L). Structured
 * specs (GeneralizedQuadraticSpec) and monomial expansions (MonomialForm) are
 * two ways of producing such a table; the table is always the ground truth.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccc/errors.hpp"
#include "ccc/mixed_radix.hpp"

namespace ccc {

// ---------------------------------------------------------------------------
// Univariate tables
// ---------------------------------------------------------------------------

/// A univariate map Z_q -> Z_q given by its value list.
class FuncTable {
 public:
  FuncTable() = default;

  FuncTable(std::uint32_t modulus, std::vector<Residue> values) : modulus_(modulus), values_(std::move(values)) {
    if (modulus_ < 1) throw SpecError("table modulus must be positive");
    if (values_.size() != modulus_) {
      throw SpecError("table has " + std::to_string(values_.size()) + " entries, modulus is " +
                      std::to_string(modulus_));
    }
    for (auto v : values_) {
      if (v >= modulus_) throw SpecError("table entry " + std::to_string(v) + " not in Z_" + std::to_string(modulus_));
    }
  }

  static FuncTable identity(std::uint32_t q) {
    std::vector<Residue> v(q);
    for (std::uint32_t u = 0; u < q; ++u) v[u] = u;
    return {q, std::move(v)};
  }

  static FuncTable constant(std::uint32_t q, Residue c) { return {q, std::vector<Residue>(q, c % q)}; }

  /// u -> (a*u + b) mod q.
  static FuncTable affine(std::uint32_t q, Residue a, Residue b) {
    std::vector<Residue> v(q);
    for (std::uint32_t u = 0; u < q; ++u) v[u] = static_cast<Residue>((std::uint64_t{a} * u + b) % q);
    return {q, std::move(v)};
  }

  std::uint32_t modulus() const { return modulus_; }
  const std::vector<Residue>& values() const { return values_; }
  Residue operator()(Residue u) const { return values_[u]; }

  bool operator==(const FuncTable&) const = default;

 private:
  std::uint32_t modulus_ = 0;
  std::vector<Residue> values_;
};

/// True iff u -> t(u) mod p, for u in {0..p-1}, is a bijection of {0..p-1}.
inline bool is_permutation_mod(const FuncTable& t, std::uint32_t p) {
  if (p == 0 || t.modulus() % p != 0) {
    throw DomainError("p = " + std::to_string(p) + " does not divide q = " + std::to_string(t.modulus()));
  }
  std::vector<bool> seen(p, false);
  for (std::uint32_t u = 0; u < p; ++u) {
    const auto r = t(u) % p;
    if (seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Restriction index sets
// ---------------------------------------------------------------------------

/// The restricted variable set J, grouped by block, and the map c <-> digits.
///
/// Restriction digits are ordered as the positions are listed. The integer
/// form of c weights them least-significant first, matching the domain's own
/// convention, so c ranges over [0, prod p_i^{n_i}).
class RestrictionSet {
 public:
  RestrictionSet() = default;

  RestrictionSet(const DomainSpec& d, std::vector<std::size_t> positions) : positions_(std::move(positions)) {
    std::size_t last_block = 0;
    std::vector<bool> used(d.variable_count(), false);
    per_block_.assign(d.block_count(), 0);
    for (std::size_t k = 0; k < positions_.size(); ++k) {
      const auto pos = positions_[k];
      if (pos >= d.variable_count()) {
        throw SpecError("restricted position " + std::to_string(pos) + " outside the " +
                        std::to_string(d.variable_count()) + " variables");
      }
      if (used[pos]) throw SpecError("restricted position " + std::to_string(pos) + " listed twice");
      used[pos] = true;
      const auto blk = d.block_of_variable(pos);
      if (k > 0 && blk < last_block) throw SpecError("restricted positions must be grouped by ascending block");
      last_block = blk;
      ++per_block_[blk];
      radices_.push_back(d.radix_of_variable(pos));
    }
    count_ = 1;
    for (auto r : radices_) count_ = detail::checked_mul(count_, r);
  }

  const std::vector<std::size_t>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  /// n_i.
  std::size_t count_in_block(std::size_t i) const { return per_block_.empty() ? 0 : per_block_.at(i); }
  /// L' = number of distinct restriction values.
  std::uint64_t count() const { return count_; }

  std::uint64_t index_of(const Residue* digits) const {
    std::uint64_t c = 0;
    for (std::size_t k = positions_.size(); k-- > 0;) c = c * radices_[k] + digits[positions_[k]];
    return c;
  }

  std::vector<Residue> digits_of(std::uint64_t c) const {
    if (c >= count_) throw RangeError("restriction index " + std::to_string(c) + " out of range");
    std::vector<Residue> out(positions_.size());
    for (std::size_t k = 0; k < positions_.size(); ++k) {
      out[k] = static_cast<Residue>(c % radices_[k]);
      c /= radices_[k];
    }
    return out;
  }

  std::uint64_t index_of_digits(const std::vector<Residue>& c) const {
    if (c.size() != positions_.size()) throw SpecError("restriction needs " + std::to_string(size()) + " digits");
    std::uint64_t idx = 0;
    for (std::size_t k = positions_.size(); k-- > 0;) {
      if (c[k] >= radices_[k]) {
        throw DomainError("restriction digit " + std::to_string(c[k]) + " exceeds radix " +
                          std::to_string(radices_[k]));
      }
      idx = idx * radices_[k] + c[k];
    }
    return idx;
  }

 private:
  std::vector<std::size_t> positions_;
  std::vector<std::uint32_t> radices_;
  std::vector<std::size_t> per_block_;
  std::uint64_t count_ = 1;
};

// ---------------------------------------------------------------------------
// Generalized quadratic spec
// ---------------------------------------------------------------------------

/// One chain term (q/p_i) * first(x_a) * second(x_b).
struct ChainLink {
  FuncTable first;
  FuncTable second;
};

/// Cross-block term weight * left(x_{last of block i}) * right(x_{first of block i+1}).
struct Coupling {
  Residue weight = 0;
  FuncTable left;
  FuncTable right;
};

/// The parts of the restricted function that may depend on the restriction value c.
struct RestrictionTerms {
  /// Per block: pi_i^c as flat variable positions, covering the block minus J_i.
  std::vector<std::vector<std::size_t>> order;
  /// Per block: g_{i,j'}, applied to x_{pi_i^c(j')}.
  std::vector<std::vector<FuncTable>> linear;
};

/**
 * Restricted generalized quadratic function. For x with x_J = c:
 *
 *   f(x) = sum_i [ (q/p_i) sum_j first_{i,j}(x_{pi(j)}) second_{i,j}(x_{pi(j+1)})
 *                  + sum_j' linear_{i,j'}(x_{pi(j')}) ]
 *        + sum_i' weight_i' left_i'(x_{last of pi_i'}) right_i'(x_{first of pi_{i'+1}})
 *        + offset(c)        (mod q)
 *
 * where pi = pi_i^c. On a uniform Z_q^m domain q/p_1 = 1.
 */
struct GeneralizedQuadraticSpec {
  DomainSpec domain;
  RestrictionSet restricted;
  /// Per block, m_i - n_i - 1 links; shared by every restriction value.
  std::vector<std::vector<ChainLink>> chains;
  /// k - 1 couplings.
  std::vector<Coupling> couplings;
  RestrictionTerms shared;
  /// Optional overrides of order/linear for particular restriction values c.
  std::map<std::uint64_t, RestrictionTerms> per_restriction;
  /// Additive constant per restriction value; empty means all zero.
  std::vector<Residue> offsets;
  /// Set by corrupt_spec; builders then skip the permutation precondition.
  bool corrupted = false;

  const RestrictionTerms& terms_for(std::uint64_t c) const {
    auto it = per_restriction.find(c);
    return it == per_restriction.end() ? shared : it->second;
  }
  Residue offset_for(std::uint64_t c) const { return offsets.empty() ? 0 : offsets[c]; }
};

/// Which chain function fails the permutation requirement.
struct LinkFault {
  std::size_t block = 0;
  std::size_t index = 0;
  bool second = false;

  std::string describe() const {
    return "block " + std::to_string(block) + " chain link " + std::to_string(index) + (second ? " (second)" : " (first)");
  }
};

namespace detail {

inline void check_table(const FuncTable& t, std::uint32_t q, const std::string& what) {
  if (t.modulus() != q) {
    throw SpecError(what + ": table modulus " + std::to_string(t.modulus()) + " differs from q = " + std::to_string(q));
  }
}

inline void validate_terms(const GeneralizedQuadraticSpec& s, const RestrictionTerms& terms, const std::string& where) {
  const auto& d = s.domain;
  if (terms.order.size() != d.block_count() || terms.linear.size() != d.block_count()) {
    throw SpecError(where + ": need order and linear entries for each of the " + std::to_string(d.block_count()) +
                    " blocks");
  }
  std::vector<bool> is_restricted(d.variable_count(), false);
  for (auto p : s.restricted.positions()) is_restricted[p] = true;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const std::size_t free_vars = d.block(i).exponent - s.restricted.count_in_block(i);
    const auto& pi = terms.order[i];
    if (pi.size() != free_vars) {
      throw SpecError(where + ": block " + std::to_string(i) + " order has " + std::to_string(pi.size()) +
                      " entries, expected " + std::to_string(free_vars));
    }
    std::vector<bool> hit(d.variable_count(), false);
    for (auto p : pi) {
      if (p >= d.variable_count() || d.block_of_variable(p) != i || is_restricted[p] || hit[p]) {
        throw SpecError(where + ": block " + std::to_string(i) +
                        " order is not a bijection onto the block's unrestricted positions (bad entry " +
                        std::to_string(p) + ")");
      }
      hit[p] = true;
    }
    if (terms.linear[i].size() != free_vars) {
      throw SpecError(where + ": block " + std::to_string(i) + " needs " + std::to_string(free_vars) +
                      " linear tables, got " + std::to_string(terms.linear[i].size()));
    }
    for (std::size_t j = 0; j < free_vars; ++j) {
      check_table(terms.linear[i][j], d.modulus(), where + ": block " + std::to_string(i) + " linear " + std::to_string(j));
    }
  }
}

}  // namespace detail

/// Structural validation: J sizes, bijective orders, arities, table moduli.
inline void validate_spec(const GeneralizedQuadraticSpec& s) {
  const auto& d = s.domain;
  const auto q = d.modulus();
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto n_i = s.restricted.count_in_block(i);
    if (n_i + 1 > d.block(i).exponent) {
      throw SpecError("block " + std::to_string(i) + " restricts " + std::to_string(n_i) + " of " +
                      std::to_string(d.block(i).exponent) + " variables; at most m_i - 1 allowed");
    }
  }
  if (s.chains.size() != d.block_count()) {
    throw SpecError("need chain lists for each of the " + std::to_string(d.block_count()) + " blocks");
  }
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const std::size_t free_vars = d.block(i).exponent - s.restricted.count_in_block(i);
    if (s.chains[i].size() + 1 != free_vars) {
      throw SpecError("block " + std::to_string(i) + " needs " + std::to_string(free_vars - 1) + " chain links, got " +
                      std::to_string(s.chains[i].size()));
    }
    for (std::size_t j = 0; j < s.chains[i].size(); ++j) {
      detail::check_table(s.chains[i][j].first, q, "block " + std::to_string(i) + " chain " + std::to_string(j));
      detail::check_table(s.chains[i][j].second, q, "block " + std::to_string(i) + " chain " + std::to_string(j));
    }
  }
  if (s.couplings.size() + 1 != d.block_count()) {
    throw SpecError("need " + std::to_string(d.block_count() - 1) + " couplings, got " +
                    std::to_string(s.couplings.size()));
  }
  for (std::size_t i = 0; i < s.couplings.size(); ++i) {
    detail::check_table(s.couplings[i].left, q, "coupling " + std::to_string(i));
    detail::check_table(s.couplings[i].right, q, "coupling " + std::to_string(i));
  }
  detail::validate_terms(s, s.shared, "shared terms");
  for (const auto& [c, terms] : s.per_restriction) {
    if (c >= s.restricted.count()) throw SpecError("override for restriction " + std::to_string(c) + " out of range");
    detail::validate_terms(s, terms, "restriction " + std::to_string(c));
  }
  if (!s.offsets.empty() && s.offsets.size() != s.restricted.count()) {
    throw SpecError("offsets need one entry per restriction value (" + std::to_string(s.restricted.count()) + ")");
  }
}

/// First chain function that does not permute Z_{p_i} modulo p_i, if any.
inline std::optional<LinkFault> find_nonpermuting_link(const GeneralizedQuadraticSpec& s) {
  for (std::size_t i = 0; i < s.chains.size(); ++i) {
    const auto p = s.domain.block(i).radix;
    for (std::size_t j = 0; j < s.chains[i].size(); ++j) {
      if (!is_permutation_mod(s.chains[i][j].first, p)) return LinkFault{i, j, false};
      if (!is_permutation_mod(s.chains[i][j].second, p)) return LinkFault{i, j, true};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monomial forms
// ---------------------------------------------------------------------------

struct MonomialTerm {
  std::vector<Residue> exponent;
  Residue coefficient = 0;
};

inline std::size_t hamming_weight(const std::vector<Residue>& e) {
  return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [](Residue v) { return v != 0; }));
}

/// sum_e c_e x^e over V_L with Z_q coefficients. x^0 evaluates to 1 for every x.
class MonomialForm {
 public:
  explicit MonomialForm(DomainSpec d) : domain_(std::move(d)) {}

  const DomainSpec& domain() const { return domain_; }
  const std::vector<MonomialTerm>& terms() const { return terms_; }

  /// Adds c * x^e, merging with an existing term of the same exponent.
  MonomialForm& add(std::vector<Residue> e, Residue c) {
    if (e.size() != domain_.variable_count()) throw DomainError("exponent vector has wrong length");
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] >= domain_.radix_of_variable(j)) {
        throw DomainError("exponent " + std::to_string(e[j]) + " of x" + std::to_string(j + 1) +
                          " exceeds the block digit bound");
      }
    }
    const auto q = domain_.modulus();
    for (auto& t : terms_) {
      if (t.exponent == e) {
        t.coefficient = static_cast<Residue>((t.coefficient + c) % q);
        return *this;
      }
    }
    terms_.push_back({std::move(e), c % q});
    return *this;
  }

  /**
   * Parses a polynomial such as "2x1x2 + 4x2x3 + 3x4^2x5 + x2 + 2".
   * Variables are x1..xm (1-based); '*' between factors is optional.
   */
  static MonomialForm parse(const DomainSpec& d, std::string_view text) {
    MonomialForm form(d);
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_number = [&]() -> std::optional<std::uint64_t> {
      skip();
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      return v;
    };
    const auto q = d.modulus();
    skip();
    while (i < text.size()) {
      bool negative = false;
      if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
      }
      std::uint64_t coeff = read_number().value_or(1);
      std::vector<Residue> e(d.variable_count(), 0);
      bool any = false;
      for (;;) {
        skip();
        if (i < text.size() && text[i] == '*') {
          ++i;
          skip();
        }
        if (i >= text.size() || text[i] != 'x') break;
        ++i;
        const auto var = read_number();
        if (!var || *var == 0 || *var > d.variable_count()) throw SpecError("bad variable index in polynomial");
        std::uint64_t power = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          power = read_number().value_or(0);
        }
        e[*var - 1] = static_cast<Residue>(e[*var - 1] + power);
        any = true;
      }
      if (!any && i < text.size() && text[i] != '+' && text[i] != '-') {
        throw SpecError("unexpected character '" + std::string(1, text[i]) + "' in polynomial");
      }
      const auto c = static_cast<Residue>(negative ? (q - coeff % q) % q : coeff % q);
      form.add(std::move(e), c);
      skip();
    }
    return form;
  }

  Residue evaluate(const Residue* digits) const {
    const auto q = domain_.modulus();
    std::uint64_t acc = 0;
    for (const auto& t : terms_) {
      std::uint64_t v = t.coefficient;
      for (std::size_t j = 0; j < t.exponent.size() && v != 0; ++j) {
        for (Residue p = 0; p < t.exponent[j]; ++p) v = (v * digits[j]) % q;
      }
      acc = (acc + v) % q;
    }
    return static_cast<Residue>(acc);
  }

 private:
  DomainSpec domain_;
  std::vector<MonomialTerm> terms_;
};

/// Every exponent vector of V_L with Hamming weight at most r, each exactly once.
inline std::vector<std::vector<Residue>> monomials_upto(const DomainSpec& d, std::size_t r) {
  if (r > d.variable_count()) throw RangeError("degree bound exceeds variable count");
  std::vector<std::vector<Residue>> out;
  std::vector<Residue> e(d.variable_count(), 0);
  // Depth-first over positions; weight never exceeds r.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t weight) -> void {
    if (pos == e.size()) {
      out.push_back(e);
      return;
    }
    e[pos] = 0;
    self(self, pos + 1, weight);
    if (weight < r) {
      for (Residue v = 1; v < d.radix_of_variable(pos); ++v) {
        e[pos] = v;
        self(self, pos + 1, weight + 1);
      }
      e[pos] = 0;
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Largest weight over nonzero coefficients; 0 for the zero form.
inline std::size_t hamming_degree(const MonomialForm& mf) {
  std::size_t deg = 0;
  for (const auto& t : mf.terms()) {
    if (t.coefficient != 0) deg = std::max(deg, hamming_weight(t.exponent));
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Functions
// ---------------------------------------------------------------------------

class QaryFunction {
 public:
  using Provenance = std::variant<std::monostate, std::shared_ptr<const GeneralizedQuadraticSpec>,
                                  std::shared_ptr<const MonomialForm>>;

  QaryFunction(DomainSpec d, std::vector<Residue> table, Provenance provenance = {})
      : domain_(std::move(d)), table_(std::move(table)), provenance_(std::move(provenance)) {
    if (table_.size() != domain_.length()) {
      throw ShapeError("table length " + std::to_string(table_.size()) + " differs from L = " +
                       std::to_string(domain_.length()));
    }
    for (auto v : table_) {
      if (v >= domain_.modulus()) throw DomainError("function value outside Z_q");
    }
  }

  static QaryFunction zero(const DomainSpec& d) {
    return {d, std::vector<Residue>(d.length(), 0), std::make_shared<const MonomialForm>(d)};
  }

  static QaryFunction from_monomials(const MonomialForm& mf) {
    const auto& d = mf.domain();
    std::vector<Residue> table(d.length());
    std::vector<Residue> digits(d.variable_count());
    for (std::uint64_t x = 0; x < d.length(); ++x) {
      int_to_digits(x, d, digits.data());
      table[x] = mf.evaluate(digits.data());
    }
    return {d, std::move(table), std::make_shared<const MonomialForm>(mf)};
  }

  const DomainSpec& domain() const { return domain_; }
  const std::vector<Residue>& table() const { return table_; }
  const Provenance& provenance() const { return provenance_; }

  Residue eval(std::uint64_t x) const {
    if (x >= table_.size()) throw RangeError("point " + std::to_string(x) + " outside the domain");
    return table_[x];
  }
  Residue eval(const DomainPoint& p) const { return table_[vec_to_int(p, domain_)]; }

 private:
  DomainSpec domain_;
  std::vector<Residue> table_;
  Provenance provenance_;
};

/// Evaluates a validated spec at a point whose digits are given.
inline Residue evaluate_spec(const GeneralizedQuadraticSpec& s, const Residue* digits) {
  const auto& d = s.domain;
  const std::uint64_t q = d.modulus();
  const auto c = s.restricted.index_of(digits);
  const auto& terms = s.terms_for(c);
  std::uint64_t acc = s.offset_for(c);
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto& pi = terms.order[i];
    std::uint64_t chain = 0;
    for (std::size_t j = 0; j < s.chains[i].size(); ++j) {
      const auto& link = s.chains[i][j];
      chain += std::uint64_t{link.first(digits[pi[j]])} * link.second(digits[pi[j + 1]]) % q;
    }
    acc += (chain % q) * d.block_weight(i);
    for (std::size_t j = 0; j < pi.size(); ++j) acc += terms.linear[i][j](digits[pi[j]]);
  }
  for (std::size_t i = 0; i < s.couplings.size(); ++i) {
    const auto& cp = s.couplings[i];
    const auto& left_order = terms.order[i];
    const auto& right_order = terms.order[i + 1];
    acc += std::uint64_t{cp.weight} * cp.left(digits[left_order.back()]) % q * cp.right(digits[right_order.front()]);
  }
  return static_cast<Residue>(acc % q);
}

inline QaryFunction build_from_spec(const GeneralizedQuadraticSpec& s) {
  validate_spec(s);
  const auto& d = s.domain;
  std::vector<Residue> table(d.length());
  std::vector<Residue> digits(d.variable_count());
  for (std::uint64_t x = 0; x < d.length(); ++x) {
    int_to_digits(x, d, digits.data());
    table[x] = evaluate_spec(s, digits.data());
  }
  return {d, std::move(table), std::make_shared<const GeneralizedQuadraticSpec>(s)};
}

/// f restricted to x_J = c. Holds a reference to f, which must outlive the view.
class RestrictedView {
 public:
  RestrictedView(const QaryFunction& f, RestrictionSet j, std::vector<Residue> c)
      : f_(&f), restriction_(std::move(j)), digits_(std::move(c)) {
    index_ = restriction_.index_of_digits(digits_);
  }

  const QaryFunction& function() const { return *f_; }
  const RestrictionSet& restriction() const { return restriction_; }
  const std::vector<Residue>& digits() const { return digits_; }
  std::uint64_t index() const { return index_; }

  bool contains(std::uint64_t x) const {
    const auto p = int_to_vec(x, f_->domain());
    return restriction_.index_of(p.digits.data()) == index_;
  }

  Residue eval(std::uint64_t x) const {
    if (!contains(x)) throw DomainError("point " + std::to_string(x) + " lies outside the restriction support");
    return f_->eval(x);
  }

  /// N_c in ascending order.
  std::vector<std::uint64_t> support() const {
    std::vector<std::uint64_t> out;
    const auto& d = f_->domain();
    std::vector<Residue> digits(d.variable_count());
    for (std::uint64_t x = 0; x < d.length(); ++x) {
      int_to_digits(x, d, digits.data());
      if (restriction_.index_of(digits.data()) == index_) out.push_back(x);
    }
    return out;
  }

 private:
  const QaryFunction* f_;
  RestrictionSet restriction_;
  std::vector<Residue> digits_;
  std::uint64_t index_ = 0;
};

inline RestrictedView restrict(const QaryFunction& f, const std::vector<std::size_t>& positions,
                               std::vector<Residue> c) {
  return {f, RestrictionSet(f.domain(), positions), std::move(c)};
}

}  // namespace ccc

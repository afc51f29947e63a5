#pragma once

/**
 * @file constructors.hpp
 * @brief Complete complementary code constructions from restricted
 *        generalized quadratic functions, plus Kronecker composition.
 *
 * Every construction here is one engine. Given a spec f over V_L with
 * restricted set J (n_i variables in block i), code t and sequence d are
 *
 *   f + sum_i (q/p_i) [ (d_i + t_i) . x_{J_i}
 *                       + d_{i,n_i+1} x_{pi_i(1)} + t_{i,n_i+1} x_{pi_i(last)} ],
 *
 * with pi_i = pi_i^c on the support of x_J = c. The digit vectors t and d
 * range over prod_i Z_{p_i}^{n_i+1}, so K = M = prod_i p_i^{n_i+1}.
 *
 * The single-modulus family (Z_q^m, any q) numbers t and d most-significant
 * digit first; the mixed-radix family numbers them least-significant first
 * with block 1 fastest.
 */

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ccc/code_set.hpp"
#include "ccc/mixed_radix.hpp"
#include "ccc/qary_function.hpp"
#include "ccc/waveform.hpp"

namespace ccc {

enum class IndexOrder { least_significant_first, most_significant_first };

/// Domain of the code/sequence digit vectors: block i contributes n_i + 1 digits of radix p_i.
inline DomainSpec code_index_domain(const GeneralizedQuadraticSpec& s) {
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < s.domain.block_count(); ++i) {
    blocks.push_back({s.domain.block(i).radix, static_cast<std::uint32_t>(s.restricted.count_in_block(i) + 1)});
  }
  return DomainSpec(std::move(blocks), s.domain.modulus());
}

namespace detail {

inline std::vector<Residue> index_digits(std::uint64_t index, const DomainSpec& d, IndexOrder order) {
  auto digits = int_to_vec(index, d).digits;
  if (order == IndexOrder::most_significant_first) std::reverse(digits.begin(), digits.end());
  return digits;
}

inline void require_permuting_chains(const GeneralizedQuadraticSpec& s) {
  if (s.corrupted) return;
  if (auto fault = find_nonpermuting_link(s)) {
    throw SpecError(fault->describe() + " does not permute Z_" + std::to_string(s.domain.block(fault->block).radix) +
                    " modulo " + std::to_string(s.domain.block(fault->block).radix));
  }
}

}  // namespace detail

/// The generic engine behind every named builder.
inline CodeSet build_code_set(const GeneralizedQuadraticSpec& s, IndexOrder order, CodeSetMeta meta = {}) {
  validate_spec(s);
  detail::require_permuting_chains(s);

  const auto& d = s.domain;
  const std::uint32_t q = d.modulus();
  const auto len = d.length();
  const auto k = d.block_count();
  const auto base = build_from_spec(s);
  const auto index_domain = code_index_domain(s);
  const auto count = index_domain.length();

  // Per point: for every block, the restricted digits, then x_{pi(1)}, then x_{pi(last)}.
  std::vector<std::size_t> digit_offset(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) digit_offset[i + 1] = digit_offset[i] + s.restricted.count_in_block(i) + 1;
  const std::size_t slots = digit_offset[k];
  std::vector<Residue> d_coeff(len * slots);  // multiplies d digits
  std::vector<Residue> t_coeff(len * slots);  // multiplies t digits
  std::vector<Residue> digits(d.variable_count());
  for (std::uint64_t x = 0; x < len; ++x) {
    int_to_digits(x, d, digits.data());
    const auto c = s.restricted.index_of(digits.data());
    const auto& terms = s.terms_for(c);
    std::size_t r = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t v = 0; v < s.restricted.count_in_block(i); ++v, ++r) {
        const auto pos = s.restricted.positions()[r];
        d_coeff[x * slots + digit_offset[i] + v] = digits[pos];
        t_coeff[x * slots + digit_offset[i] + v] = digits[pos];
      }
      const auto& pi = terms.order[i];
      d_coeff[x * slots + digit_offset[i + 1] - 1] = digits[pi.front()];
      t_coeff[x * slots + digit_offset[i + 1] - 1] = digits[pi.back()];
    }
  }
  std::vector<std::uint32_t> slot_weight(slots);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = digit_offset[i]; v < digit_offset[i + 1]; ++v) slot_weight[v] = d.block_weight(i);
  }

  std::vector<std::vector<Residue>> index_digits(count);
  for (std::uint64_t u = 0; u < count; ++u) index_digits[u] = detail::index_digits(u, index_domain, order);

  std::vector<std::vector<RootSequence>> codes(count);
  std::vector<std::int32_t> entries(len);
  for (std::uint64_t t = 0; t < count; ++t) {
    const auto& td = index_digits[t];
    // Code-dependent part is the same for every sequence of the code.
    std::vector<std::uint64_t> code_part(len);
    for (std::uint64_t x = 0; x < len; ++x) {
      std::uint64_t acc = base.table()[x];
      for (std::size_t v = 0; v < slots; ++v) acc += std::uint64_t{slot_weight[v]} * td[v] * t_coeff[x * slots + v];
      code_part[x] = acc % q;
    }
    codes[t].reserve(count);
    for (std::uint64_t seq = 0; seq < count; ++seq) {
      const auto& dd = index_digits[seq];
      for (std::uint64_t x = 0; x < len; ++x) {
        std::uint64_t acc = code_part[x];
        for (std::size_t v = 0; v < slots; ++v) acc += std::uint64_t{slot_weight[v]} * dd[v] * d_coeff[x * slots + v];
        entries[x] = static_cast<std::int32_t>(acc % q);
      }
      codes[t].emplace_back(q, entries);
    }
  }
  if (s.corrupted) meta.params["corrupted"] = "true";
  return CodeSet(q, std::move(codes), std::move(meta));
}

// ---------------------------------------------------------------------------
// Single-modulus family over Z_q^m
// ---------------------------------------------------------------------------

/**
 * f = sum_{i<m} h_i(x_{pi(i)}) h'_i(x_{pi(i+1)}) + sum_j g_j(x_j).
 * pi is a permutation of {0..m-1}; g is indexed by variable.
 */
inline GeneralizedQuadraticSpec theorem1_spec(std::uint32_t q, std::uint32_t m, const std::vector<FuncTable>& h,
                                              const std::vector<FuncTable>& h_prime, const std::vector<FuncTable>& g,
                                              const std::vector<std::size_t>& pi) {
  if (m < 1) throw SpecError("need at least one variable");
  if (h.size() + 1 != m || h_prime.size() + 1 != m) throw SpecError("need m - 1 chain function pairs");
  if (g.size() != m) throw SpecError("need m linear functions");
  if (pi.size() != m) throw SpecError("permutation must have m entries");
  GeneralizedQuadraticSpec s;
  s.domain = DomainSpec::uniform(q, m);
  s.restricted = RestrictionSet(s.domain, {});
  s.chains.resize(1);
  for (std::size_t i = 0; i + 1 < m; ++i) s.chains[0].push_back({h[i], h_prime[i]});
  s.shared.order = {pi};
  s.shared.linear.resize(1);
  for (std::size_t j = 0; j < m; ++j) {
    if (pi[j] >= m) throw SpecError("permutation entry out of range");
    s.shared.linear[0].push_back(g[pi[j]]);
  }
  return s;
}

inline CodeSet build_theorem1(std::uint32_t q, std::uint32_t m, const std::vector<FuncTable>& h,
                              const std::vector<FuncTable>& h_prime, const std::vector<FuncTable>& g,
                              const std::vector<std::size_t>& pi) {
  auto s = theorem1_spec(q, m, h, h_prime, g, pi);
  return build_code_set(s, IndexOrder::most_significant_first,
                        {"theorem1", {{"q", std::to_string(q)}, {"m", std::to_string(m)}}});
}

/// sum_i c_i q^{n-i} mod q for the restriction digits c_1..c_n (0 when n = 0).
inline std::vector<Residue> default_restriction_offsets(const DomainSpec& d, const RestrictionSet& j) {
  std::vector<Residue> out(j.count());
  const auto q = d.modulus();
  for (std::uint64_t c = 0; c < j.count(); ++c) {
    const auto digits = j.digits_of(c);
    std::uint64_t acc = 0;
    for (auto v : digits) acc = (acc * q + v) % q;
    out[c] = static_cast<Residue>(acc);
  }
  return out;
}

/**
 * Restricted single-modulus spec: J restricted positions, pi the order of the
 * remaining m - n positions, g indexed by chain position (g_j(x_{pi(j)})).
 * Offsets default to sum_i c_i q^{n-i} mod q.
 */
inline GeneralizedQuadraticSpec corollary1_spec(std::uint32_t q, std::uint32_t m, const std::vector<std::size_t>& j,
                                                const std::vector<FuncTable>& h, const std::vector<FuncTable>& h_prime,
                                                const std::vector<FuncTable>& g, const std::vector<std::size_t>& pi,
                                                std::optional<std::vector<Residue>> offsets = std::nullopt) {
  GeneralizedQuadraticSpec s;
  s.domain = DomainSpec::uniform(q, m);
  s.restricted = RestrictionSet(s.domain, j);
  if (h.size() != h_prime.size()) throw SpecError("chain function lists differ in length");
  s.chains.resize(1);
  for (std::size_t i = 0; i < h.size(); ++i) s.chains[0].push_back({h[i], h_prime[i]});
  s.shared.order = {pi};
  s.shared.linear = {g};
  s.offsets = offsets ? *offsets : default_restriction_offsets(s.domain, s.restricted);
  validate_spec(s);
  return s;
}

inline CodeSet build_corollary1(const GeneralizedQuadraticSpec& s) {
  if (!s.domain.is_uniform()) throw SpecError("corollary1 needs a single-modulus Z_q^m domain");
  return build_code_set(s, IndexOrder::most_significant_first,
                        {"corollary1",
                         {{"q", std::to_string(s.domain.modulus())},
                          {"m", std::to_string(s.domain.variable_count())},
                          {"n", std::to_string(s.restricted.size())}}});
}

// ---------------------------------------------------------------------------
// Mixed-radix family
// ---------------------------------------------------------------------------

/// Parameters of the two-block construction without restriction.
struct Theorem2Params {
  std::uint32_t p1 = 2, p2 = 3, m1 = 2, m2 = 2;
  std::vector<ChainLink> block1_chain;  // m1 - 1 links (f_i, f'_i)
  std::vector<ChainLink> block2_chain;  // m2 - 1 links (h_j, h'_j)
  std::vector<FuncTable> g1;            // m1 tables, indexed by variable
  std::vector<FuncTable> g2;            // m2 tables, indexed by variable
  Coupling coupling;                    // gamma f_0(x_{pi(m1)}) h_0(x_{pi'(1)})
  std::vector<std::size_t> pi1;         // permutation of positions 0..m1-1
  std::vector<std::size_t> pi2;         // permutation of positions m1..m1+m2-1
};

inline GeneralizedQuadraticSpec theorem2_spec(const Theorem2Params& p) {
  GeneralizedQuadraticSpec s;
  s.domain = DomainSpec::mixed({{p.p1, p.m1}, {p.p2, p.m2}});
  s.restricted = RestrictionSet(s.domain, {});
  s.chains = {p.block1_chain, p.block2_chain};
  s.couplings = {p.coupling};
  s.shared.order = {p.pi1, p.pi2};
  s.shared.linear.resize(2);
  if (p.g1.size() != p.m1 || p.g2.size() != p.m2) throw SpecError("need one linear table per variable");
  for (auto pos : p.pi1) {
    if (pos >= p.m1) throw SpecError("block 1 permutation entry out of range");
    s.shared.linear[0].push_back(p.g1[pos]);
  }
  for (auto pos : p.pi2) {
    if (pos < p.m1 || pos >= p.m1 + p.m2) throw SpecError("block 2 permutation entry out of range");
    s.shared.linear[1].push_back(p.g2[pos - p.m1]);
  }
  validate_spec(s);
  return s;
}

inline CodeSet build_theorem2(const Theorem2Params& p) {
  return build_code_set(theorem2_spec(p), IndexOrder::least_significant_first,
                        {"theorem2",
                         {{"p", std::to_string(p.p1) + "," + std::to_string(p.p2)},
                          {"m", std::to_string(p.m1) + "," + std::to_string(p.m2)}}});
}

/// General k-block restricted construction; K = prod p_i^{n_i+1}.
inline CodeSet build_corollary3(const GeneralizedQuadraticSpec& s) {
  std::string primes, exps, ns;
  for (std::size_t i = 0; i < s.domain.block_count(); ++i) {
    const auto sep = i ? "," : "";
    primes += sep + std::to_string(s.domain.block(i).radix);
    exps += sep + std::to_string(s.domain.block(i).exponent);
    ns += sep + std::to_string(s.restricted.count_in_block(i));
  }
  return build_code_set(s, IndexOrder::least_significant_first,
                        {"corollary3", {{"p", primes}, {"m", exps}, {"n", ns}}});
}

// ---------------------------------------------------------------------------
// Composition and corruption
// ---------------------------------------------------------------------------

/**
 * {C_u (x) D_v}: code u*K_D + v, sequence m_C*M_D + m_D, entry i*L_D + j,
 * exponent e_C (Q/q_C) + e_D (Q/q_D) mod Q with Q = lcm(q_C, q_D).
 * C is the slow (outer) factor.
 */
inline CodeSet kronecker_compose(const CodeSet& c, const CodeSet& d) {
  const std::uint32_t q = std::lcm(c.modulus(), d.modulus());
  const auto scale_c = q / c.modulus();
  const auto scale_d = q / d.modulus();
  const auto lc = c.length();
  const auto ld = d.length();
  std::vector<std::vector<RootSequence>> codes;
  codes.reserve(c.code_count() * d.code_count());
  std::vector<std::int32_t> entries(lc * ld);
  for (std::size_t u = 0; u < c.code_count(); ++u) {
    for (std::size_t v = 0; v < d.code_count(); ++v) {
      std::vector<RootSequence> code;
      code.reserve(c.sequences_per_code() * d.sequences_per_code());
      for (const auto& a : c.codes()[u]) {
        for (const auto& b : d.codes()[v]) {
          for (std::size_t i = 0; i < lc; ++i) {
            for (std::size_t j = 0; j < ld; ++j) {
              const auto ea = a.entries()[i];
              const auto eb = b.entries()[j];
              entries[i * ld + j] =
                  (ea == RootSequence::kNull || eb == RootSequence::kNull)
                      ? RootSequence::kNull
                      : static_cast<std::int32_t>((std::uint64_t(ea) * scale_c + std::uint64_t(eb) * scale_d) % q);
            }
          }
          code.emplace_back(q, entries);
        }
      }
      codes.push_back(std::move(code));
    }
  }
  CodeSetMeta meta{"kronecker",
                   {{"outer", c.meta().construction.empty() ? "unnamed" : c.meta().construction},
                    {"inner", d.meta().construction.empty() ? "unnamed" : d.meta().construction}}};
  return CodeSet(q, std::move(codes), std::move(meta));
}

/**
 * Per-block specs of a spec with no cross-block coupling, each over
 * Z_{p_i}^{m_i} with the original modulus q. Requires every per-restriction
 * override of block i to depend only on block i's restriction digits and the
 * offsets to be additive across blocks; block 1 carries offset(0).
 * Then build_corollary3(s) == compose(block_k, ..., compose(block_2, block_1)).
 */
inline std::vector<GeneralizedQuadraticSpec> split_blocks(const GeneralizedQuadraticSpec& s) {
  validate_spec(s);
  const auto& d = s.domain;
  const auto q = d.modulus();
  for (const auto& c : s.couplings) {
    if (c.weight != 0) throw SpecError("spec with a nonzero coupling does not split into blocks");
  }
  const auto& j = s.restricted;
  // Restricted digits of block i occupy [first[i], first[i+1]) in J order.
  std::vector<std::size_t> first(d.block_count() + 1, 0);
  for (std::size_t i = 0; i < d.block_count(); ++i) first[i + 1] = first[i] + j.count_in_block(i);

  auto local_terms = [&](const RestrictionTerms& t, std::size_t i) {
    RestrictionTerms r;
    auto o = t.order[i];
    for (auto& x : o) x -= d.block_offset(i);
    r.order = {o};
    r.linear = {t.linear[i]};
    return r;
  };

  std::vector<GeneralizedQuadraticSpec> out;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    GeneralizedQuadraticSpec b;
    b.domain = DomainSpec({d.block(i)}, q);
    const auto base = d.block_offset(i);
    std::vector<std::size_t> local;
    for (std::size_t r = first[i]; r < first[i + 1]; ++r) local.push_back(j.positions()[r] - base);
    b.restricted = RestrictionSet(b.domain, local);
    b.chains = {s.chains[i]};
    b.shared = local_terms(s.shared, i);
    b.offsets.assign(b.restricted.count(), 0);
    out.push_back(std::move(b));
  }

  auto same_terms = [](const RestrictionTerms& a, const RestrictionTerms& b) {
    if (a.order != b.order || a.linear.size() != b.linear.size()) return false;
    for (std::size_t v = 0; v < a.linear[0].size(); ++v) {
      if (a.linear[0][v].values() != b.linear[0][v].values()) return false;
    }
    return true;
  };
  std::vector<std::map<std::uint64_t, RestrictionTerms>> seen(d.block_count());
  const auto zero = s.offset_for(0);
  for (std::uint64_t c = 0; c < j.count(); ++c) {
    const auto digits = j.digits_of(c);
    std::uint64_t predicted = zero;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
      std::vector<Residue> mine(digits.begin() + static_cast<std::ptrdiff_t>(first[i]),
                                digits.begin() + static_cast<std::ptrdiff_t>(first[i + 1]));
      const auto ci = out[i].restricted.index_of_digits(mine);
      const auto t = local_terms(s.terms_for(c), i);
      auto [it, fresh] = seen[i].emplace(ci, t);
      if (!fresh && !same_terms(it->second, t)) {
        throw SpecError("block " + std::to_string(i) + " terms depend on other blocks' restriction digits");
      }
      if (!same_terms(t, out[i].shared)) out[i].per_restriction[ci] = t;
      // Offset contribution of block i alone: offset(c_i, 0, ..., 0) - offset(0).
      std::vector<Residue> only(j.size(), 0);
      std::copy(mine.begin(), mine.end(), only.begin() + static_cast<std::ptrdiff_t>(first[i]));
      const auto part = (s.offset_for(j.index_of_digits(only)) + q - zero) % q;
      out[i].offsets[ci] = static_cast<Residue>(part);
      predicted += part;
    }
    if (predicted % q != s.offset_for(c)) throw SpecError("offsets are not additive across blocks");
  }
  for (auto& v : out[0].offsets) v = static_cast<Residue>((v + zero) % q);
  return out;
}

/// Rebuilds a split spec as compose(block_k, ..., compose(block_2, block_1)).
inline CodeSet compose_blocks(const std::vector<GeneralizedQuadraticSpec>& blocks) {
  if (blocks.empty()) throw SpecError("no blocks to compose");
  auto acc = build_corollary3(blocks.front());
  for (std::size_t i = 1; i < blocks.size(); ++i) acc = kronecker_compose(build_corollary3(blocks[i]), acc);
  return acc;
}

enum class LinkSide { first, second };

/// Replaces one chain function with a non-permuting table and flags the spec corrupted.
inline GeneralizedQuadraticSpec corrupt_spec(GeneralizedQuadraticSpec s, std::size_t block, std::size_t index,
                                             LinkSide which, const FuncTable& replacement) {
  if (block >= s.chains.size() || index >= s.chains[block].size()) {
    throw SpecError("no chain link " + std::to_string(index) + " in block " + std::to_string(block));
  }
  const auto p = s.domain.block(block).radix;
  if (replacement.modulus() != s.domain.modulus()) throw SpecError("replacement table has the wrong modulus");
  if (is_permutation_mod(replacement, p)) {
    throw SpecError("replacement permutes Z_" + std::to_string(p) + "; a corruption must not");
  }
  auto& link = s.chains[block][index];
  (which == LinkSide::first ? link.first : link.second) = replacement;
  s.corrupted = true;
  return s;
}

}  // namespace ccc

#pragma once

// Seeded random component tables and specs for the sufficiency/necessity sweeps.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ccc/constructors.hpp"
#include "ccc/qary_function.hpp"

namespace ccc::random {

using Engine = std::mt19937_64;

inline Residue draw(Engine& rng, std::uint32_t bound) {
  return static_cast<Residue>(std::uniform_int_distribution<std::uint32_t>(0, bound - 1)(rng));
}

inline FuncTable table(Engine& rng, std::uint32_t q) {
  std::vector<Residue> v(q);
  for (auto& e : v) e = draw(rng, q);
  return {q, std::move(v)};
}

/// Any table whose reduction mod p permutes {0..p-1}; other inputs are free.
inline FuncTable permutation_table(Engine& rng, std::uint32_t q, std::uint32_t p) {
  std::vector<Residue> perm(p);
  std::iota(perm.begin(), perm.end(), Residue{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Residue> v(q);
  for (std::uint32_t u = 0; u < q; ++u) {
    v[u] = u < p ? static_cast<Residue>(perm[u] + p * draw(rng, q / p)) : draw(rng, q);
  }
  return {q, std::move(v)};
}

/// Table that fails is_permutation_mod(., p): two of the first p inputs collide mod p.
inline FuncTable nonpermutation_table(Engine& rng, std::uint32_t q, std::uint32_t p) {
  auto t = table(rng, q);
  auto v = t.values();
  const auto a = draw(rng, p);
  auto b = draw(rng, p - 1);
  if (b >= a) ++b;
  v[b] = static_cast<Residue>((v[a] % p + p * draw(rng, q / p)) % q);
  return {q, std::move(v)};
}

inline std::vector<std::size_t> permutation(Engine& rng, std::vector<std::size_t> items) {
  std::shuffle(items.begin(), items.end(), rng);
  return items;
}

inline GeneralizedQuadraticSpec theorem1_spec(Engine& rng, std::uint32_t q, std::uint32_t m) {
  std::vector<FuncTable> h, hp, g;
  for (std::uint32_t i = 0; i + 1 < m; ++i) {
    h.push_back(permutation_table(rng, q, q));
    hp.push_back(permutation_table(rng, q, q));
  }
  for (std::uint32_t j = 0; j < m; ++j) g.push_back(table(rng, q));
  std::vector<std::size_t> pi(m);
  std::iota(pi.begin(), pi.end(), std::size_t{0});
  return ccc::theorem1_spec(q, m, h, hp, g, permutation(rng, pi));
}

inline Theorem2Params theorem2_params(Engine& rng, std::uint32_t p1, std::uint32_t p2, std::uint32_t m1,
                                      std::uint32_t m2) {
  const std::uint32_t q = p1 * p2;
  Theorem2Params p{p1, p2, m1, m2, {}, {}, {}, {}, {}, {}, {}};
  for (std::uint32_t i = 0; i + 1 < m1; ++i) p.block1_chain.push_back({permutation_table(rng, q, p1), permutation_table(rng, q, p1)});
  for (std::uint32_t j = 0; j + 1 < m2; ++j) p.block2_chain.push_back({permutation_table(rng, q, p2), permutation_table(rng, q, p2)});
  for (std::uint32_t i = 0; i < m1; ++i) p.g1.push_back(table(rng, q));
  for (std::uint32_t j = 0; j < m2; ++j) p.g2.push_back(table(rng, q));
  p.coupling = {draw(rng, q), table(rng, q), table(rng, q)};
  std::vector<std::size_t> a(m1), b(m2);
  std::iota(a.begin(), a.end(), std::size_t{0});
  std::iota(b.begin(), b.end(), std::size_t{m1});
  p.pi1 = permutation(rng, a);
  p.pi2 = permutation(rng, b);
  return p;
}

/**
 * Random restricted spec over `d` with the given restricted positions. Chains
 * permute mod p_i, linear tables and couplings are arbitrary, offsets random.
 * With per_c_orders, every restriction value gets its own pi_i^c and g.
 */
inline GeneralizedQuadraticSpec restricted_spec(Engine& rng, const DomainSpec& d, const std::vector<std::size_t>& j,
                                                bool per_c_orders = false, bool zero_couplings = false) {
  const auto q = d.modulus();
  GeneralizedQuadraticSpec s;
  s.domain = d;
  s.restricted = RestrictionSet(d, j);
  auto terms = [&] {
    RestrictionTerms t;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
      std::vector<std::size_t> free;
      for (std::size_t v = 0; v < d.block(i).exponent; ++v) {
        const auto pos = d.block_offset(i) + v;
        if (std::find(j.begin(), j.end(), pos) == j.end()) free.push_back(pos);
      }
      t.order.push_back(permutation(rng, free));
      std::vector<FuncTable> lin;
      for (std::size_t v = 0; v < free.size(); ++v) lin.push_back(table(rng, q));
      t.linear.push_back(std::move(lin));
    }
    return t;
  };
  s.shared = terms();
  if (per_c_orders) {
    for (std::uint64_t c = 0; c < s.restricted.count(); ++c) s.per_restriction[c] = terms();
  }
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto p = d.block(i).radix;
    const auto links = d.block(i).exponent - s.restricted.count_in_block(i);
    std::vector<ChainLink> chain;
    for (std::size_t l = 0; l + 1 < links; ++l) chain.push_back({permutation_table(rng, q, p), permutation_table(rng, q, p)});
    s.chains.push_back(std::move(chain));
  }
  for (std::size_t i = 0; i + 1 < d.block_count(); ++i) {
    s.couplings.push_back(zero_couplings ? Coupling{0, FuncTable::constant(q, 0), FuncTable::constant(q, 0)}
                                         : Coupling{draw(rng, q), table(rng, q), table(rng, q)});
  }
  s.offsets.resize(s.restricted.count());
  for (auto& o : s.offsets) o = draw(rng, q);
  validate_spec(s);
  return s;
}

}  // namespace ccc::random

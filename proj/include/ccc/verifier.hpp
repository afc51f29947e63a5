#pragma once

/**
 * @file verifier.hpp
 * @brief CCC certification, Gram-polynomial cross-check, necessity probes and
 *        the character-sum / permutation equivalence check.
 */

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccc/code_set.hpp"
#include "ccc/constructors.hpp"
#include "ccc/exact_corr.hpp"

namespace ccc {

enum class VerifyMode { exact, floating };

inline const char* to_string(VerifyMode m) { return m == VerifyMode::exact ? "exact" : "float"; }

struct Violation {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::int64_t tau = 0;
  std::optional<GroupRingElement> exact;  // absent in float mode
  std::complex<double> value;
};

struct VerifyReport {
  bool is_ccc = false;
  /// All correlation conditions hold (true for a MOGCS with K < M as well).
  bool conditions_hold = false;
  std::int64_t peak = 0;  // expected M*L
  std::vector<Violation> violations;
  std::size_t violation_count = 0;  // total, may exceed violations.size()
  VerifyMode mode = VerifyMode::exact;
  std::size_t shifts_tested = 0;
  std::size_t code_count = 0;
  std::size_t sequences_per_code = 0;
  std::size_t length = 0;
};

inline constexpr std::size_t kDefaultMaxViolations = 16;
inline constexpr double kFloatZeroTolerance = 1e-9;

namespace detail {

/// Complex correlations for tau = 0 .. L-1.
inline std::vector<std::complex<double>> code_accf_nonneg_float(CodeRow r1, CodeRow r2) {
  detail::check_rows(r1, r2);
  const auto q = r1[0].modulus();
  const auto len = r1[0].length();
  std::vector<std::complex<double>> roots(q);
  for (std::uint32_t j = 0; j < q; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / q);
  std::vector<std::complex<double>> out(len, {0.0, 0.0});
  for (std::size_t m = 0; m < r1.size(); ++m) {
    const auto& a = r1[m].entries();
    const auto& b = r2[m].entries();
    for (std::size_t t = 0; t < len; ++t) {
      if (a[t] == RootSequence::kNull) continue;
      const auto za = roots[static_cast<std::size_t>(a[t])];
      for (std::size_t s = t; s < len; ++s) {
        if (b[s] == RootSequence::kNull) continue;
        out[s - t] += za * std::conj(roots[static_cast<std::size_t>(b[s])]);
      }
    }
  }
  return out;
}

}  // namespace detail

/**
 * Checks every pair k1 <= k2 at every shift. Exact mode certifies with
 * is_zero_exact; float mode treats |Theta| < 1e-9 * M * L as zero and is
 * advisory only. Violations are sorted by (k1, k2, tau) and capped.
 */
inline VerifyReport verify_ccc(const CodeSet& c, VerifyMode mode = VerifyMode::exact,
                               std::size_t max_violations = kDefaultMaxViolations) {
  VerifyReport rep;
  rep.mode = mode;
  rep.code_count = c.code_count();
  rep.sequences_per_code = c.sequences_per_code();
  rep.length = c.length();
  const auto ml = static_cast<std::int64_t>(c.sequences_per_code() * c.length());
  rep.peak = ml;
  const auto len = static_cast<std::int64_t>(c.length());
  const double tol = kFloatZeroTolerance * static_cast<double>(ml);

  auto record = [&](std::size_t k1, std::size_t k2, std::int64_t tau, std::optional<GroupRingElement> g,
                    std::complex<double> z) {
    ++rep.violation_count;
    if (rep.violations.size() < max_violations) rep.violations.push_back({k1, k2, tau, std::move(g), z});
  };

  for (std::size_t k1 = 0; k1 < c.code_count(); ++k1) {
    for (std::size_t k2 = k1; k2 < c.code_count(); ++k2) {
      const bool same = k1 == k2;
      if (mode == VerifyMode::exact) {
        const auto fwd = code_accf_nonneg(c.row(k1), c.row(k2));
        std::vector<GroupRingElement> bwd;
        if (!same) bwd = code_accf_nonneg(c.row(k2), c.row(k1));
        for (std::int64_t tau = same ? 0 : -(len - 1); tau < len; ++tau) {
          const auto g = tau >= 0 ? fwd[static_cast<std::size_t>(tau)] : bwd[static_cast<std::size_t>(-tau)].conjugate();
          ++rep.shifts_tested;
          const bool ok = (same && tau == 0) ? equals_integer_exact(g, ml) : is_zero_exact(g);
          if (!ok) record(k1, k2, tau, g, g.to_complex());
        }
      } else {
        const auto fwd = detail::code_accf_nonneg_float(c.row(k1), c.row(k2));
        std::vector<std::complex<double>> bwd;
        if (!same) bwd = detail::code_accf_nonneg_float(c.row(k2), c.row(k1));
        for (std::int64_t tau = same ? 0 : -(len - 1); tau < len; ++tau) {
          const auto z = tau >= 0 ? fwd[static_cast<std::size_t>(tau)] : std::conj(bwd[static_cast<std::size_t>(-tau)]);
          ++rep.shifts_tested;
          const double target = (same && tau == 0) ? static_cast<double>(ml) : 0.0;
          if (std::abs(z - target) >= tol) record(k1, k2, tau, std::nullopt, z);
        }
      }
    }
  }
  rep.conditions_hold = rep.violation_count == 0;
  rep.is_ccc = rep.conditions_hold && c.code_count() == c.sequences_per_code();
  return rep;
}

// ---------------------------------------------------------------------------
// Sampled exact verification
// ---------------------------------------------------------------------------

struct CorrelationCell {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::int64_t tau = 0;
};

/// Uniform cells over (k1, k2, tau) in [0,K)^2 x (-L, L).
template <class Rng>
std::vector<CorrelationCell> sample_cells(const CodeSet& c, std::size_t count, Rng& rng) {
  std::uniform_int_distribution<std::size_t> code(0, c.code_count() - 1);
  const auto len = static_cast<std::int64_t>(c.length());
  std::uniform_int_distribution<std::int64_t> shift(-(len - 1), len - 1);
  std::vector<CorrelationCell> cells(count);
  for (auto& cell : cells) cell = {code(rng), code(rng), shift(rng)};
  return cells;
}

/// Number of cells whose exact value differs from the ideal (M*L at the peak, 0 elsewhere).
inline std::size_t count_cell_violations(const CodeSet& c, const std::vector<CorrelationCell>& cells) {
  const auto ml = static_cast<std::int64_t>(c.sequences_per_code() * c.length());
  std::size_t bad = 0;
  for (const auto& cell : cells) {
    const auto g = code_accf(c.row(cell.k1), c.row(cell.k2), cell.tau);
    const bool peak = cell.k1 == cell.k2 && cell.tau == 0;
    if (!(peak ? equals_integer_exact(g, ml) : is_zero_exact(g))) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Gram identity C(z) C^dagger(z^{-1}) = M L I_K
// ---------------------------------------------------------------------------

/**
 * Multiplies generating polynomials directly: for each (k1, k2) and each m,
 * A(z) * z^{L-1} conj(B)(z^{-1}) with group-ring (or complex) coefficients,
 * and compares the K x K polynomial matrix with M L I_K. Independent of the
 * shift-wise correlation routines.
 */
inline bool gram_identity_holds(const CodeSet& c, VerifyMode mode) {
  const auto len = c.length();
  const auto q = c.modulus();
  const auto ml = static_cast<std::int64_t>(c.sequences_per_code() * len);
  const std::size_t width = 2 * len - 1;
  std::vector<std::complex<double>> roots(q);
  for (std::uint32_t j = 0; j < q; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / q);
  const double tol = kFloatZeroTolerance * static_cast<double>(ml);

  for (std::size_t k1 = 0; k1 < c.code_count(); ++k1) {
    for (std::size_t k2 = k1; k2 < c.code_count(); ++k2) {
      std::vector<std::int64_t> exact(mode == VerifyMode::exact ? width * q : 0, 0);
      std::vector<std::complex<double>> approx(mode == VerifyMode::floating ? width : 0);
      for (std::size_t m = 0; m < c.sequences_per_code(); ++m) {
        const auto& a = c.codes()[k1][m].entries();
        const auto& b = c.codes()[k2][m].entries();
        // Reversed conjugate of b: coefficient of z^{L-1-j} is -b_j.
        for (std::size_t i = 0; i < len; ++i) {
          if (a[i] == RootSequence::kNull) continue;
          for (std::size_t jr = 0; jr < len; ++jr) {
            const auto bj = b[len - 1 - jr];
            if (bj == RootSequence::kNull) continue;
            const auto deg = i + jr;
            if (mode == VerifyMode::exact) {
              const auto e = static_cast<std::size_t>((a[i] + static_cast<std::int32_t>(q) - bj) % static_cast<std::int32_t>(q));
              exact[deg * q + e] = detail::add_checked(exact[deg * q + e], 1);
            } else {
              approx[deg] += roots[static_cast<std::size_t>(a[i])] * std::conj(roots[static_cast<std::size_t>(bj)]);
            }
          }
        }
      }
      for (std::size_t deg = 0; deg < width; ++deg) {
        const std::int64_t target = (k1 == k2 && deg == len - 1) ? ml : 0;
        if (mode == VerifyMode::exact) {
          GroupRingElement g(q, std::vector<std::int64_t>(exact.begin() + static_cast<std::ptrdiff_t>(deg * q),
                                                          exact.begin() + static_cast<std::ptrdiff_t>((deg + 1) * q)));
          if (!equals_integer_exact(g, target)) return false;
        } else if (std::abs(approx[deg] - static_cast<double>(target)) >= tol) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Necessity probes
// ---------------------------------------------------------------------------

enum class ProbeOutcome { rejected_not_corrupted, violation_found, no_violation };

inline const char* to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::rejected_not_corrupted:
      return "rejected";
    case ProbeOutcome::violation_found:
      return "violation";
    case ProbeOutcome::no_violation:
      return "no-violation";
  }
  return "?";
}

struct ProbeEvidence {
  ProbeOutcome outcome = ProbeOutcome::no_violation;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::int64_t tau = 0;
  std::optional<GroupRingElement> value;
  bool at_witness_shift = false;
  std::vector<std::int64_t> witness_shifts;
};

/**
 * Witness shifts Delta_i (p^{m'} - n p^{m'-j}) for every block i, with
 * m' = m_i - n_i the block's free-variable count, j = 1..m'-1, n = 1..p-1.
 * On Z_q^m with no restriction this is the family q^m - n q^{m-j}.
 */
inline std::vector<std::int64_t> witness_shifts(const GeneralizedQuadraticSpec& s) {
  std::vector<std::int64_t> out;
  const auto& d = s.domain;
  const auto len = static_cast<std::int64_t>(d.length());
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const std::int64_t p = d.block(i).radix;
    const auto m = static_cast<std::uint32_t>(d.block(i).exponent - s.restricted.count_in_block(i));
    const auto stride = static_cast<std::int64_t>(d.stride(i));
    for (std::uint32_t j = 1; j < m; ++j) {
      for (std::int64_t n = 1; n < p; ++n) {
        const auto tau = stride * (static_cast<std::int64_t>(detail::ipow(p, m)) - n * static_cast<std::int64_t>(detail::ipow(p, m - j)));
        if (tau > 0 && tau < len && std::find(out.begin(), out.end(), tau) == out.end()) out.push_back(tau);
      }
    }
  }
  return out;
}

/// Builds the spec's code set and looks for an exact nonzero off-peak correlation, witness shifts first.
inline ProbeEvidence necessity_probe(const GeneralizedQuadraticSpec& s) {
  ProbeEvidence ev;
  if (!s.corrupted) {
    ev.outcome = ProbeOutcome::rejected_not_corrupted;
    return ev;
  }
  const auto order = s.domain.is_uniform() ? IndexOrder::most_significant_first : IndexOrder::least_significant_first;
  const auto c = build_code_set(s, order, {"probe", {}});
  ev.witness_shifts = witness_shifts(s);
  const auto ml = static_cast<std::int64_t>(c.sequences_per_code() * c.length());
  auto bad = [&](std::size_t k1, std::size_t k2, std::int64_t tau, const GroupRingElement& g) {
    return (k1 == k2 && tau == 0) ? !equals_integer_exact(g, ml) : !is_zero_exact(g);
  };
  for (auto tau : ev.witness_shifts) {
    for (std::size_t k1 = 0; k1 < c.code_count(); ++k1) {
      for (std::size_t k2 = 0; k2 < c.code_count(); ++k2) {
        auto g = code_accf(c.row(k1), c.row(k2), tau);
        if (bad(k1, k2, tau, g)) {
          ev = {ProbeOutcome::violation_found, k1, k2, tau, std::move(g), true, std::move(ev.witness_shifts)};
          return ev;
        }
      }
    }
  }
  const auto len = static_cast<std::int64_t>(c.length());
  for (std::size_t k1 = 0; k1 < c.code_count(); ++k1) {
    for (std::size_t k2 = 0; k2 < c.code_count(); ++k2) {
      const auto fwd = code_accf_nonneg(c.row(k1), c.row(k2));
      for (std::int64_t tau = 0; tau < len; ++tau) {
        if (bad(k1, k2, tau, fwd[static_cast<std::size_t>(tau)])) {
          ev = {ProbeOutcome::violation_found, k1, k2, tau, fwd[static_cast<std::size_t>(tau)], false,
                std::move(ev.witness_shifts)};
          return ev;
        }
      }
    }
  }
  ev.outcome = ProbeOutcome::no_violation;
  return ev;
}

// ---------------------------------------------------------------------------
// Character sums vs permutations
// ---------------------------------------------------------------------------

/// sum_x xi_q^{r t(x)}, exactly.
inline GroupRingElement character_sum(const FuncTable& t, std::uint32_t r) {
  const auto q = t.modulus();
  GroupRingElement g(q);
  for (std::uint32_t x = 0; x < q; ++x) g.add_term(static_cast<Residue>((std::uint64_t{r} * t(x)) % q));
  return g;
}

/// True iff every nontrivial character sum of t vanishes exactly.
inline bool character_sums_vanish(const FuncTable& t) {
  for (std::uint32_t r = 1; r < t.modulus(); ++r) {
    if (!is_zero_exact(character_sum(t, r))) return false;
  }
  return true;
}

struct Lemma1Report {
  std::uint32_t q = 0;
  bool exhaustive = false;
  std::uint64_t tables_checked = 0;
  std::uint64_t permutations = 0;
  std::uint64_t counterexamples = 0;

  bool ok() const { return counterexamples == 0 && tables_checked > 0; }
};

/**
 * For every t: Z_q -> Z_q, compares "all character sums vanish" with
 * is_permutation_mod(t, q). Exhaustive when q^q <= exhaustive_limit,
 * otherwise `samples` random tables (half of them random permutations).
 */
inline Lemma1Report lemma1_equiv_check(std::uint32_t q, std::uint64_t samples = 20000, std::uint64_t seed = 1,
                                       std::uint64_t exhaustive_limit = 100000) {
  Lemma1Report rep;
  rep.q = q;
  std::uint64_t total = 1;
  bool small = true;
  for (std::uint32_t i = 0; i < q && small; ++i) {
    total *= q;
    small = total <= exhaustive_limit;
  }
  auto check = [&](const FuncTable& t) {
    const bool perm = is_permutation_mod(t, q);
    ++rep.tables_checked;
    rep.permutations += perm;
    if (perm != character_sums_vanish(t)) ++rep.counterexamples;
  };
  if (small) {
    rep.exhaustive = true;
    std::vector<Residue> v(q, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t x = code;
      for (auto& e : v) {
        e = static_cast<Residue>(x % q);
        x /= q;
      }
      check(FuncTable(q, v));
    }
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::vector<Residue> v(q);
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (i % 2 == 0) {
      std::iota(v.begin(), v.end(), Residue{0});
      std::shuffle(v.begin(), v.end(), rng);
    } else {
      for (auto& e : v) e = static_cast<Residue>(rng() % q);
    }
    check(FuncTable(q, v));
  }
  return rep;
}

}  // namespace ccc

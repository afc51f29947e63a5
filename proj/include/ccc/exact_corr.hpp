#pragma once

/**
 * @file exact_corr.hpp
 * @brief Aperiodic correlation in the group ring Z[Z_q] with an exact zero test.
 *
 * A correlation value sum_t xi^{a_t - b_{t+tau}} is kept as a multiplicity
 * vector over exponents 0..q-1. It is zero as a complex number iff the
 * polynomial sum_j counts[j] x^j is divisible by the q-th cyclotomic
 * polynomial, so the zero test is integer polynomial division. For composite
 * q there are vanishing sums with unequal counts (1 + xi_6^2 + xi_6^4 = 0), which
 * is why floating-point evaluation is only ever a prefilter.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccc/errors.hpp"
#include "ccc/waveform.hpp"

namespace ccc {

namespace detail {

inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in group-ring arithmetic");
  return r;
}

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

/// Integer polynomial, ascending coefficients, no trailing zeros (zero polynomial is empty).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::int64_t operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  IntPolynomial operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<std::int64_t> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
        r[i + j] = detail::add_checked(r[i + j], detail::mul_checked(coeffs_[i], o.coeffs_[j]));
      }
    }
    return IntPolynomial(std::move(r));
  }

  /// Quotient and remainder by a monic divisor; exact over Z.
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& divisor) const {
    if (divisor.is_zero() || divisor.coeffs_.back() != 1) throw std::invalid_argument("divisor must be monic");
    std::vector<std::int64_t> rem = coeffs_;
    const auto dd = static_cast<std::size_t>(divisor.degree());
    if (rem.size() <= dd) return {IntPolynomial{}, IntPolynomial(std::move(rem))};
    std::vector<std::int64_t> quo(rem.size() - dd, 0);
    for (std::size_t k = rem.size(); k-- > dd;) {
      const auto lead = rem[k];
      if (lead == 0) continue;
      quo[k - dd] = lead;
      for (std::size_t j = 0; j <= dd; ++j) {
        rem[k - dd + j] = detail::add_checked(rem[k - dd + j], -detail::mul_checked(lead, divisor.coeffs_[j]));
      }
    }
    rem.resize(dd);
    return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
  }

  bool operator==(const IntPolynomial&) const = default;

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<std::int64_t> coeffs_;
};

/// Phi_n, by exact division of x^n - 1 by Phi_d over the proper divisors d of n. Memoized.
inline const IntPolynomial& cyclotomic(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial needs n >= 1");
  static std::recursive_mutex mutex;
  static std::map<std::uint32_t, IntPolynomial> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<std::int64_t> c(n + 1, 0);
  c[0] = -1;
  c[n] = 1;
  IntPolynomial poly(std::move(c));
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [quo, rem] = poly.divmod_monic(cyclotomic(d));
    if (!rem.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
    poly = std::move(quo);
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

// ---------------------------------------------------------------------------
// Group ring elements
// ---------------------------------------------------------------------------

/// sum_j counts[j] xi_q^j, held exactly.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(std::uint32_t modulus) : counts_(modulus, 0) {
    if (modulus < 1) throw ShapeError("group ring modulus must be positive");
  }
  GroupRingElement(std::uint32_t modulus, std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (modulus < 1 || counts_.size() != modulus) throw ShapeError("count vector length must equal the modulus");
  }

  std::uint32_t modulus() const { return static_cast<std::uint32_t>(counts_.size()); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t operator[](std::size_t j) const { return counts_[j]; }

  void add_term(Residue exponent, std::int64_t multiplicity = 1) {
    auto& slot = counts_[exponent % counts_.size()];
    slot = detail::add_checked(slot, multiplicity);
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    if (o.modulus() != modulus()) throw ShapeError("group ring moduli differ");
    for (std::size_t j = 0; j < counts_.size(); ++j) counts_[j] = detail::add_checked(counts_[j], o.counts_[j]);
    return *this;
  }
  GroupRingElement operator+(const GroupRingElement& o) const {
    auto r = *this;
    r += o;
    return r;
  }
  GroupRingElement operator-() const {
    auto r = *this;
    for (auto& c : r.counts_) c = detail::mul_checked(c, -1);
    return r;
  }
  GroupRingElement operator-(const GroupRingElement& o) const { return *this + (-o); }

  /// Complex conjugate: exponent j -> -j.
  GroupRingElement conjugate() const {
    GroupRingElement r(modulus());
    const auto q = counts_.size();
    for (std::size_t j = 0; j < q; ++j) r.counts_[(q - j) % q] = counts_[j];
    return r;
  }

  bool all_counts_zero() const {
    for (auto c : counts_) {
      if (c != 0) return false;
    }
    return true;
  }

  std::complex<double> to_complex() const {
    const auto q = static_cast<double>(counts_.size());
    std::complex<double> z{0.0, 0.0};
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      if (counts_[j] == 0) continue;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / q;
      z += static_cast<double>(counts_[j]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
  }

  bool operator==(const GroupRingElement&) const = default;

 private:
  std::vector<std::int64_t> counts_;
};

/// True iff the element is 0 as a complex number: Phi_q divides sum_j counts[j] x^j.
inline bool is_zero_exact(const GroupRingElement& g) {
  if (g.all_counts_zero()) return true;
  const auto& phi = cyclotomic(g.modulus());
  return IntPolynomial(g.counts()).divmod_monic(phi).second.is_zero();
}

/// Exact test that g equals the integer n (i.e. g - n*xi^0 vanishes).
inline bool equals_integer_exact(const GroupRingElement& g, std::int64_t n) {
  GroupRingElement shifted = g;
  shifted.add_term(0, -n);
  return is_zero_exact(shifted);
}

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

using CodeRow = std::span<const RootSequence>;

namespace detail {

inline void check_pair(const RootSequence& a, const RootSequence& b) {
  if (a.modulus() != b.modulus()) throw ShapeError("sequences have different moduli");
  if (a.length() != b.length()) throw ShapeError("sequences have different lengths");
}

inline void check_rows(CodeRow r1, CodeRow r2) {
  if (r1.size() != r2.size()) throw ShapeError("code rows have different sizes");
  if (r1.empty()) throw ShapeError("empty code row");
  for (std::size_t m = 0; m < r1.size(); ++m) {
    check_pair(r1[m], r2[m]);
    check_pair(r1[m], r1[0]);
  }
}

/// Adds accf(a, b)(tau) for every tau in [0, L) into counts[tau * q + exponent].
inline void accumulate_nonneg_shifts(const RootSequence& a, const RootSequence& b, std::vector<std::int64_t>& counts) {
  const auto q = a.modulus();
  const auto len = a.length();
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t t = 0; t < len; ++t) {
    const auto at = ea[t];
    if (at == RootSequence::kNull) continue;
    std::int64_t* row = counts.data();
    for (std::size_t s = t; s < len; ++s) {
      const auto bs = eb[s];
      if (bs == RootSequence::kNull) continue;
      const auto diff = static_cast<std::uint32_t>(at + static_cast<std::int32_t>(q) - bs) % q;
      ++row[(s - t) * q + diff];
    }
  }
}

}  // namespace detail

/// Theta(a, b)(tau) = sum_t a_t conj(b_{t+tau}), exact. Null entries contribute nothing.
inline GroupRingElement accf_exact(const RootSequence& a, const RootSequence& b, std::int64_t tau) {
  detail::check_pair(a, b);
  const auto len = static_cast<std::int64_t>(a.length());
  if (tau <= -len || tau >= len) throw RangeError("shift " + std::to_string(tau) + " outside (-L, L)");
  const auto q = a.modulus();
  GroupRingElement g(q);
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  const std::int64_t begin = tau >= 0 ? 0 : -tau;
  const std::int64_t end = tau >= 0 ? len - tau : len;
  for (std::int64_t t = begin; t < end; ++t) {
    const auto at = ea[static_cast<std::size_t>(t)];
    const auto bt = eb[static_cast<std::size_t>(t + tau)];
    if (at == RootSequence::kNull || bt == RootSequence::kNull) continue;
    g.add_term(static_cast<Residue>((at + static_cast<std::int32_t>(q) - bt) % static_cast<std::int32_t>(q)));
  }
  return g;
}

/// Code-level correlation: sum over the M constituent sequences.
inline GroupRingElement code_accf(CodeRow r1, CodeRow r2, std::int64_t tau) {
  detail::check_rows(r1, r2);
  GroupRingElement g(r1[0].modulus());
  for (std::size_t m = 0; m < r1.size(); ++m) g += accf_exact(r1[m], r2[m], tau);
  return g;
}

/// code_accf(r1, r2, tau) for tau = 0 .. L-1, in one O(M L^2) pass.
inline std::vector<GroupRingElement> code_accf_nonneg(CodeRow r1, CodeRow r2) {
  detail::check_rows(r1, r2);
  const auto q = r1[0].modulus();
  const auto len = r1[0].length();
  std::vector<std::int64_t> counts(len * q, 0);
  for (std::size_t m = 0; m < r1.size(); ++m) detail::accumulate_nonneg_shifts(r1[m], r2[m], counts);
  std::vector<GroupRingElement> out;
  out.reserve(len);
  for (std::size_t tau = 0; tau < len; ++tau) {
    out.emplace_back(q, std::vector<std::int64_t>(counts.begin() + static_cast<std::ptrdiff_t>(tau * q),
                                                  counts.begin() + static_cast<std::ptrdiff_t>((tau + 1) * q)));
  }
  return out;
}

struct ProfileEntry {
  std::int64_t tau = 0;
  GroupRingElement value;
  std::complex<double> complex;

  double magnitude() const { return std::abs(complex); }
};

/// All shifts -(L-1) .. L-1 in ascending order.
struct CorrelationProfile {
  std::vector<ProfileEntry> entries;

  const ProfileEntry& at_shift(std::int64_t tau) const {
    const auto len = static_cast<std::int64_t>((entries.size() + 1) / 2);
    if (tau <= -len || tau >= len) throw RangeError("shift outside profile");
    return entries[static_cast<std::size_t>(tau + len - 1)];
  }
};

/// Negative shifts come from Theta(r1, r2)(-tau) = conj(Theta(r2, r1)(tau)).
inline CorrelationProfile correlation_profile(CodeRow r1, CodeRow r2) {
  const auto forward = code_accf_nonneg(r1, r2);
  const auto backward = code_accf_nonneg(r2, r1);
  const auto len = static_cast<std::int64_t>(forward.size());
  CorrelationProfile p;
  p.entries.reserve(static_cast<std::size_t>(2 * len - 1));
  for (std::int64_t tau = -(len - 1); tau < len; ++tau) {
    ProfileEntry e;
    e.tau = tau;
    e.value = tau >= 0 ? forward[static_cast<std::size_t>(tau)] : backward[static_cast<std::size_t>(-tau)].conjugate();
    e.complex = e.value.to_complex();
    p.entries.push_back(std::move(e));
  }
  return p;
}

}  // namespace ccc

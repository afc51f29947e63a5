#pragma once

// The (12,72) worked example over Z_2^3 x Z_3^2 with q = 6.
//
//   f = 2x1x2 + 4x2x3 + x2x4 + x2x5 + 3x1x3 + 2x4x5 + x2 + 2,  J = {x2}
//   f|x2=0 = 3x1x3 + 2x4x5 + 2
//   f|x2=1 = 3x1x3 + 2x4x5 + 2x1 + 4x3 + x4 + x5 + 3

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "ccc/code_set.hpp"
#include "ccc/constructors.hpp"
#include "ccc/exact_corr.hpp"
#include "ccc/qary_function.hpp"
#include "ccc/verifier.hpp"
#include "ccc/waveform.hpp"

namespace ccc::example72 {

inline constexpr std::array<Residue, 72> kEta = {
    2, 2, 3, 5, 2, 5, 1, 0, 2, 2, 4, 0, 2, 5, 2, 1, 2, 2, 5, 1, 2, 5, 3, 2, 2, 2, 4, 0, 2, 5, 2, 1, 4, 4, 1, 3,
    4, 1, 5, 4, 0, 0, 4, 0, 0, 3, 2, 1, 2, 2, 5, 1, 2, 5, 3, 2, 0, 0, 4, 0, 0, 3, 2, 1, 4, 4, 3, 5, 4, 1, 1, 0};

/// Non-null exponents of psi(f|x2=0), in order of position.
inline constexpr std::array<Residue, 36> kRestrictedZero = {2, 2, 2, 5, 2, 2, 2, 5, 2, 2, 2, 5, 2, 2, 2, 5, 4, 4,
                                                            4, 1, 0, 0, 0, 3, 2, 2, 2, 5, 0, 0, 0, 3, 4, 4, 4, 1};

inline constexpr const char* kPolynomial = "2x1x2 + 4x2x3 + x2x4 + x2x5 + 3x1x3 + 2x4x5 + x2 + 2";
inline constexpr const char* kRestrictionZero = "3x1x3 + 2x4x5 + 2";
inline constexpr const char* kRestrictionOne = "3x1x3 + 2x4x5 + 2x1 + 4x3 + x4 + x5 + 3";

inline DomainSpec domain() { return DomainSpec::mixed({{2, 3}, {3, 2}}); }

inline GeneralizedQuadraticSpec spec() {
  const std::uint32_t q = 6;
  GeneralizedQuadraticSpec s;
  s.domain = domain();
  s.restricted = RestrictionSet(s.domain, {1});
  const auto id = FuncTable::identity(q);
  s.chains = {{{id, id}}, {{id, id}}};
  s.couplings = {Coupling{0, FuncTable::constant(q, 0), FuncTable::constant(q, 0)}};
  const auto zero = FuncTable::constant(q, 0);
  s.shared.order = {{0, 2}, {3, 4}};
  s.shared.linear = {{zero, zero}, {zero, zero}};
  RestrictionTerms one;
  one.order = s.shared.order;
  one.linear = {{FuncTable::affine(q, 2, 0), FuncTable::affine(q, 4, 0)},
                {FuncTable::affine(q, 1, 0), FuncTable::affine(q, 1, 0)}};
  s.per_restriction[1] = one;
  s.offsets = {2, 3};
  validate_spec(s);
  return s;
}

/// Expected member of code t for digit tuple (d11, d12, d21), from the printed C_t display.
inline std::vector<Residue> listed_member(std::uint32_t t, Residue d11, Residue d12, Residue d21) {
  const auto d = domain();
  const auto f = QaryFunction::from_monomials(MonomialForm::parse(d, kPolynomial));
  const Residue t11 = t % 2, t12 = (t / 2) % 2, t21 = t / 4;
  std::vector<Residue> out(d.length());
  std::vector<Residue> x(d.variable_count());
  for (std::uint64_t i = 0; i < d.length(); ++i) {
    int_to_digits(i, d, x.data());
    const auto v = f.table()[i] + 3 * (d11 + t11) * x[1] + 3 * (d12 * x[0] + t12 * x[2]) + 2 * (d21 * x[3] + t21 * x[4]);
    out[i] = v % 6;
  }
  return out;
}

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Set equality between code t of `c` and the 12 members listed for C_t.
inline bool code_matches_listing(const CodeSet& c, std::uint32_t t) {
  std::vector<std::vector<std::int32_t>> want, got;
  for (Residue d12 = 0; d12 < 2; ++d12)
    for (Residue d11 = 0; d11 < 2; ++d11)
      for (Residue d21 = 0; d21 < 3; ++d21) {
        const auto m = listed_member(t, d11, d12, d21);
        want.emplace_back(m.begin(), m.end());
      }
  for (const auto& s : c.codes().at(t)) got.push_back(s.entries());
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  return want == got;
}

inline CodeSet build() { return build_corollary3(spec()); }

/// Every named check of the worked example. All must pass.
inline std::vector<Check> reproduce() {
  std::vector<Check> out;
  const auto d = domain();
  const auto s = spec();
  const auto f = build_from_spec(s);

  {
    const auto e = eta(f);
    std::size_t first_bad = e.size();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != kEta[i]) {
        first_bad = i;
        break;
      }
    }
    out.push_back({"eta matches the 72-symbol listing", first_bad == e.size(),
                   first_bad == e.size() ? "72/72" : "first mismatch at x=" + std::to_string(first_bad)});
  }
  {
    const auto mf = QaryFunction::from_monomials(MonomialForm::parse(d, kPolynomial));
    out.push_back({"structured spec equals the monomial form", mf.table() == f.table(), ""});
  }
  const std::array<const char*, 2> forms = {kRestrictionZero, kRestrictionOne};
  for (Residue c = 0; c < 2; ++c) {
    const auto g = QaryFunction::from_monomials(MonomialForm::parse(d, forms[c]));
    const auto view = restrict(f, {1}, {c});
    bool ok = true;
    for (auto x : view.support()) ok = ok && view.eval(x) == g.table()[x];
    out.push_back({"restriction x2=" + std::to_string(c) + " matches " + forms[c],
                   ok && view.support().size() == 36, std::to_string(view.support().size()) + " points"});
  }
  {
    const auto r = psi_restricted(f, {1}, {0});
    std::vector<Residue> seen;
    bool gaps = true;
    for (std::size_t x = 0; x < r.length(); ++x) {
      if (auto v = r.at(x)) seen.push_back(*v);
      gaps = gaps && (r.is_null(x) == ((x % 4) >= 2));
    }
    out.push_back({"psi(f|x2=0) pattern with double-null gaps",
                   gaps && std::equal(seen.begin(), seen.end(), kRestrictedZero.begin(), kRestrictedZero.end()), ""});
  }
  const auto c = build_corollary3(s);
  out.push_back({"code 1 equals the listed C_1", code_matches_listing(c, 1), ""});
  out.push_back({"code 11 equals the listed C_11", code_matches_listing(c, 11), ""});
  {
    const auto rep = verify_ccc(c, VerifyMode::exact);
    out.push_back({"(12,72) set verifies exactly", rep.is_ccc && rep.peak == 864 && c.code_count() == 12,
                   "K=" + std::to_string(c.code_count()) + " M=" + std::to_string(c.sequences_per_code()) +
                       " peak=" + std::to_string(rep.peak) + " violations=" + std::to_string(rep.violation_count)});
  }
  {
    const auto auto1 = correlation_profile(c.row(1), c.row(1));
    const auto auto11 = correlation_profile(c.row(11), c.row(11));
    const auto cross = correlation_profile(c.row(1), c.row(11));
    bool ok = true;
    for (std::size_t i = 0; i < auto1.entries.size(); ++i) {
      const bool peak = auto1.entries[i].tau == 0;
      ok = ok && (peak ? equals_integer_exact(auto1.entries[i].value, 864) : is_zero_exact(auto1.entries[i].value));
      ok = ok && (peak ? equals_integer_exact(auto11.entries[i].value, 864) : is_zero_exact(auto11.entries[i].value));
      ok = ok && is_zero_exact(cross.entries[i].value);
    }
    out.push_back({"codes 1 and 11: ideal auto and zero cross profiles", ok && auto1.entries.size() == 143, ""});
  }
  return out;
}

}  // namespace ccc::example72

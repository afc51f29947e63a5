#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccc/errors.hpp"
#include "ccc/qary_function.hpp"

namespace ccc {

/// Length-L sequence over the q-th roots of unity, stored as exponents.
/// A null entry is the complex value 0 (positions outside a restriction support).
class RootSequence {
 public:
  static constexpr std::int32_t kNull = -1;

  RootSequence() = default;

  RootSequence(std::uint32_t modulus, std::vector<std::int32_t> entries)
      : modulus_(modulus), entries_(std::move(entries)) {
    if (modulus_ < 1) throw ShapeError("sequence modulus must be positive");
    for (auto e : entries_) {
      if (e != kNull && (e < 0 || static_cast<std::uint32_t>(e) >= modulus_)) {
        throw DomainError("exponent " + std::to_string(e) + " outside Z_" + std::to_string(modulus_));
      }
    }
  }

  static RootSequence from_exponents(std::uint32_t modulus, const std::vector<Residue>& exps) {
    return {modulus, std::vector<std::int32_t>(exps.begin(), exps.end())};
  }

  std::uint32_t modulus() const { return modulus_; }
  std::size_t length() const { return entries_.size(); }
  const std::vector<std::int32_t>& entries() const { return entries_; }
  bool is_null(std::size_t i) const { return entries_[i] == kNull; }
  std::optional<Residue> at(std::size_t i) const {
    if (entries_.at(i) == kNull) return std::nullopt;
    return static_cast<Residue>(entries_[i]);
  }

  std::size_t support_size() const {
    std::size_t n = 0;
    for (auto e : entries_) n += e != kNull;
    return n;
  }

  bool operator==(const RootSequence&) const = default;

 private:
  std::uint32_t modulus_ = 1;
  std::vector<std::int32_t> entries_;
};

/// (f_0, ..., f_{L-1}).
inline std::vector<Residue> eta(const QaryFunction& f) { return f.table(); }

inline RootSequence psi(const QaryFunction& f) { return RootSequence::from_exponents(f.domain().modulus(), f.table()); }

/// psi of f restricted to x_J = c: exponents on N_c, null elsewhere.
inline RootSequence psi_restricted(const QaryFunction& f, const std::vector<std::size_t>& positions,
                                   const std::vector<Residue>& c) {
  const auto& d = f.domain();
  const RestrictionSet j(d, positions);
  const auto target = j.index_of_digits(c);
  std::vector<std::int32_t> entries(d.length(), RootSequence::kNull);
  std::vector<Residue> digits(d.variable_count());
  for (std::uint64_t x = 0; x < d.length(); ++x) {
    int_to_digits(x, d, digits.data());
    if (j.index_of(digits.data()) == target) entries[x] = static_cast<std::int32_t>(f.table()[x]);
  }
  return {d.modulus(), std::move(entries)};
}

}  // namespace ccc

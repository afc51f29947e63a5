#pragma once

/**
 * @file mixed_radix.hpp
 * @brief Mixed-radix domains Z_{p1}^{m1} x ... x Z_{pk}^{mk} and their index maps.
 *
 * A point x = (x_1, ..., x_m) is split into k blocks. Block i holds m_i digits
 * in {0, ..., p_i - 1}, least-significant first, so its value is
 * sigma_i = sum_j x_{i,j} p_i^{j-1}. The flat index is
 *
 *     x = sigma_1 * Delta_1 + ... + sigma_k * Delta_k,
 *     Delta_1 = 1,  Delta_{i+1} = Delta_i * p_i^{m_i},
 *
 * which makes block 1 the fastest-varying one.
 *
 * Two flavours exist:
 * - mixed(): distinct primes p_1 < ... < p_k, modulus q = p_1 ... p_k;
 * - uniform(q, m): one block of radix q (any q >= 2), i.e. the plain Z_q^m domain.
 */

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ccc/errors.hpp"

namespace ccc {

using Residue = std::uint32_t;

struct Block {
  std::uint32_t radix = 2;
  std::uint32_t exponent = 1;

  bool operator==(const Block&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("mixed-radix size overflows 64 bits");
  return r;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

/// Digits of a domain point, block 1 first, least-significant digit first in each block.
struct DomainPoint {
  std::vector<Residue> digits;

  bool operator==(const DomainPoint&) const = default;
};

class DomainSpec {
 public:
  DomainSpec() : DomainSpec(std::vector<Block>{Block{2, 1}}, 2) {}

  /// General constructor. More than one block requires strictly increasing primes.
  DomainSpec(std::vector<Block> blocks, std::uint32_t modulus) : blocks_(std::move(blocks)), modulus_(modulus) {
    if (blocks_.empty()) throw DomainError("domain needs at least one block");
    if (modulus_ < 1) throw DomainError("modulus must be positive");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto& b = blocks_[i];
      if (b.radix < 2) throw DomainError("block radix must be at least 2");
      if (b.exponent < 1) throw DomainError("block exponent must be positive");
      if (modulus_ % b.radix != 0) {
        throw DomainError("block radix " + std::to_string(b.radix) + " does not divide modulus " +
                          std::to_string(modulus_));
      }
      if (blocks_.size() > 1) {
        if (!detail::is_prime(b.radix)) {
          throw DomainError("mixed domains need prime radices, got " + std::to_string(b.radix));
        }
        if (i > 0 && blocks_[i - 1].radix >= b.radix) {
          throw DomainError("block primes must be strictly increasing");
        }
      }
    }
    length_ = 1;
    std::size_t offset = 0;
    for (const auto& b : blocks_) {
      strides_.push_back(length_);
      offsets_.push_back(offset);
      const auto block_len = detail::ipow(b.radix, b.exponent);
      block_lengths_.push_back(block_len);
      length_ = detail::checked_mul(length_, block_len);
      for (std::uint32_t j = 0; j < b.exponent; ++j) variable_block_.push_back(strides_.size() - 1);
      offset += b.exponent;
    }
    variable_count_ = offset;
  }

  /// Z_{p1}^{m1} x ... x Z_{pk}^{mk} with q = p1 ... pk.
  static DomainSpec mixed(std::vector<Block> blocks) {
    std::uint64_t q = 1;
    for (const auto& b : blocks) q = detail::checked_mul(q, b.radix);
    if (q > UINT32_MAX) throw DomainError("modulus too large");
    return DomainSpec(std::move(blocks), static_cast<std::uint32_t>(q));
  }

  /// Z_q^m with a single radix-q block (q need not be prime).
  static DomainSpec uniform(std::uint32_t q, std::uint32_t m) { return DomainSpec({Block{q, m}}, q); }

  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t length() const { return length_; }
  std::size_t variable_count() const { return variable_count_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  /// First flat variable position of block i.
  std::size_t block_offset(std::size_t i) const { return offsets_.at(i); }
  /// Delta_i.
  std::uint64_t stride(std::size_t i) const { return strides_.at(i); }
  /// L_i = p_i^{m_i}.
  std::uint64_t block_length(std::size_t i) const { return block_lengths_.at(i); }
  std::size_t block_of_variable(std::size_t j) const { return variable_block_.at(j); }
  std::uint32_t radix_of_variable(std::size_t j) const { return blocks_[variable_block_.at(j)].radix; }
  /// q / p_i, the weight carried by block-i quadratic and linear code terms.
  std::uint32_t block_weight(std::size_t i) const { return modulus_ / blocks_.at(i).radix; }
  bool is_uniform() const { return blocks_.size() == 1 && blocks_[0].radix == modulus_; }

  bool operator==(const DomainSpec& o) const { return blocks_ == o.blocks_ && modulus_ == o.modulus_; }

 private:
  std::vector<Block> blocks_;
  std::uint32_t modulus_ = 2;
  std::uint64_t length_ = 1;
  std::size_t variable_count_ = 0;
  std::vector<std::uint64_t> strides_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint64_t> block_lengths_;
  std::vector<std::size_t> variable_block_;
};

/// Writes the digits of x into out (size variable_count). No allocation on the hot path.
inline void int_to_digits(std::uint64_t x, const DomainSpec& d, Residue* out) {
  if (x >= d.length()) {
    throw RangeError("index " + std::to_string(x) + " outside [0," + std::to_string(d.length()) + ")");
  }
  std::size_t pos = 0;
  for (const auto& b : d.blocks()) {
    for (std::uint32_t j = 0; j < b.exponent; ++j) {
      out[pos++] = static_cast<Residue>(x % b.radix);
      x /= b.radix;
    }
  }
}

inline DomainPoint int_to_vec(std::uint64_t x, const DomainSpec& d) {
  DomainPoint p;
  p.digits.resize(d.variable_count());
  int_to_digits(x, d, p.digits.data());
  return p;
}

inline std::uint64_t vec_to_int(const DomainPoint& v, const DomainSpec& d) {
  if (v.digits.size() != d.variable_count()) {
    throw DomainError("point has " + std::to_string(v.digits.size()) + " digits, domain expects " +
                      std::to_string(d.variable_count()));
  }
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto& b = d.block(i);
    std::uint64_t sigma = 0;
    for (std::uint32_t j = b.exponent; j-- > 0;) {
      const auto digit = v.digits[d.block_offset(i) + j];
      if (digit >= b.radix) {
        throw DomainError("digit " + std::to_string(digit) + " at position " + std::to_string(d.block_offset(i) + j) +
                          " exceeds radix " + std::to_string(b.radix));
      }
      sigma = sigma * b.radix + digit;
    }
    x += sigma * d.stride(i);
  }
  return x;
}

}  // namespace ccc

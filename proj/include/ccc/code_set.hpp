#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ccc/errors.hpp"
#include "ccc/waveform.hpp"

namespace ccc {

struct CodeSetMeta {
  std::string construction;
  std::map<std::string, std::string> params;

  bool operator==(const CodeSetMeta&) const = default;
};

/// K codes of M sequences each, all over Z_q with length L.
class CodeSet {
 public:
  CodeSet() = default;

  CodeSet(std::uint32_t modulus, std::vector<std::vector<RootSequence>> codes, CodeSetMeta meta = {})
      : modulus_(modulus), codes_(std::move(codes)), meta_(std::move(meta)) {
    if (codes_.empty() || codes_[0].empty()) throw ShapeError("code set needs at least one code and one sequence");
    length_ = codes_[0][0].length();
    for (const auto& code : codes_) {
      if (code.size() != codes_[0].size()) throw ShapeError("codes have different numbers of sequences");
      for (const auto& s : code) {
        if (s.modulus() != modulus_) throw ShapeError("sequence modulus differs from the code set modulus");
        if (s.length() != length_) throw ShapeError("sequences have different lengths");
      }
    }
  }

  std::uint32_t modulus() const { return modulus_; }
  std::size_t length() const { return length_; }
  std::size_t code_count() const { return codes_.size(); }
  std::size_t sequences_per_code() const { return codes_.empty() ? 0 : codes_[0].size(); }
  const std::vector<std::vector<RootSequence>>& codes() const { return codes_; }
  std::span<const RootSequence> row(std::size_t k) const {
    if (k >= codes_.size()) throw RangeError("code index " + std::to_string(k) + " out of range");
    return codes_[k];
  }
  const CodeSetMeta& meta() const { return meta_; }
  CodeSetMeta& meta() { return meta_; }

  bool operator==(const CodeSet&) const = default;

 private:
  std::uint32_t modulus_ = 1;
  std::size_t length_ = 0;
  std::vector<std::vector<RootSequence>> codes_;
  CodeSetMeta meta_;
};

}  // namespace ccc

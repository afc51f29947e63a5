#pragma once

/**
 * @file io.hpp
 * @brief JSON build configs, code-set and report serialization, profile CSV.
 *
 * Variables and positions in configs are 1-based (x1 .. xm), matching the
 * usual monomial notation; the library itself is 0-based.
 */

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccc/code_set.hpp"
#include "ccc/constructors.hpp"
#include "ccc/exact_corr.hpp"
#include "ccc/random_fill.hpp"
#include "ccc/verifier.hpp"

namespace ccc::io {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

inline DomainSpec parse_domain(const json& j) {
  if (j.contains("blocks")) {
    std::vector<Block> blocks;
    for (const auto& b : j.at("blocks")) blocks.push_back({b.at("p").get<std::uint32_t>(), b.at("m").get<std::uint32_t>()});
    return DomainSpec::mixed(std::move(blocks));
  }
  if (j.contains("q") && j.contains("m")) return DomainSpec::uniform(j.at("q").get<std::uint32_t>(), j.at("m").get<std::uint32_t>());
  throw ConfigError("domain needs \"blocks\" or \"q\" and \"m\"");
}

inline json domain_to_json(const DomainSpec& d) {
  if (d.is_uniform()) return {{"q", d.modulus()}, {"m", d.variable_count()}};
  json blocks = json::array();
  for (const auto& b : d.blocks()) blocks.push_back({{"p", b.radix}, {"m", b.exponent}});
  return {{"blocks", blocks}};
}

// ---------------------------------------------------------------------------
// Build configs
// ---------------------------------------------------------------------------

enum class Construction { theorem1, corollary1, theorem2, corollary3, kronecker };

inline Construction parse_construction(const std::string& s) {
  if (s == "theorem1") return Construction::theorem1;
  if (s == "corollary1") return Construction::corollary1;
  if (s == "theorem2") return Construction::theorem2;
  if (s == "corollary3") return Construction::corollary3;
  if (s == "kronecker") return Construction::kronecker;
  throw ConfigError("unknown construction \"" + s + "\"");
}

/// A table is an integer array of length q, or "identity" / "zero".
inline FuncTable parse_table(const json& j, std::uint32_t q, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "identity") return FuncTable::identity(q);
    if (s == "zero") return FuncTable::constant(q, 0);
    throw ConfigError(where + ": unknown table name \"" + s + "\"");
  }
  if (!j.is_array()) throw ConfigError(where + ": table must be an array or a name");
  auto values = j.get<std::vector<Residue>>();
  if (values.size() != q) throw ConfigError(where + ": table needs " + std::to_string(q) + " entries");
  try {
    return {q, std::move(values)};
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

inline json table_to_json(const FuncTable& t) { return t.values(); }

namespace detail {

inline std::size_t position(const json& j, const DomainSpec& d, const std::string& where) {
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > d.variable_count()) {
    throw ConfigError(where + ": variable " + std::to_string(v) + " outside 1.." + std::to_string(d.variable_count()));
  }
  return static_cast<std::size_t>(v - 1);
}

inline std::vector<std::size_t> free_positions(const DomainSpec& d, const RestrictionSet& j, std::size_t block) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < d.block(block).exponent; ++v) {
    const auto pos = d.block_offset(block) + v;
    if (std::find(j.positions().begin(), j.positions().end(), pos) == j.positions().end()) out.push_back(pos);
  }
  return out;
}

inline RestrictionTerms parse_terms(const json& j, const GeneralizedQuadraticSpec& s, const RestrictionTerms* fallback,
                                    random::Engine* rng, const std::string& where) {
  const auto& d = s.domain;
  const auto q = d.modulus();
  RestrictionTerms t;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto free = free_positions(d, s.restricted, i);
    const auto bw = where + " block " + std::to_string(i + 1);
    if (j.contains("order")) {
      if (j.at("order").size() != d.block_count()) throw ConfigError(where + ": order needs one list per block");
      std::vector<std::size_t> pi;
      for (const auto& v : j.at("order")[i]) pi.push_back(position(v, d, bw + " order"));
      t.order.push_back(std::move(pi));
    } else if (fallback) {
      t.order.push_back(fallback->order[i]);
    } else {
      t.order.push_back(rng ? random::permutation(*rng, free) : free);
    }
    std::vector<FuncTable> lin;
    if (j.contains("linear")) {
      if (j.at("linear").size() != d.block_count()) throw ConfigError(where + ": linear needs one list per block");
      const auto& row = j.at("linear")[i];
      for (std::size_t v = 0; v < row.size(); ++v) lin.push_back(parse_table(row[v], q, bw + " linear " + std::to_string(v + 1)));
    } else if (fallback) {
      lin = fallback->linear[i];
    } else {
      for (std::size_t v = 0; v < free.size(); ++v) lin.push_back(rng ? random::table(*rng, q) : FuncTable::constant(q, 0));
    }
    t.linear.push_back(std::move(lin));
  }
  return t;
}

}  // namespace detail

/**
 * Spec part of a build config. Omitted slots are filled from `seed` when
 * present (chains with random permutations mod p_i, everything else
 * arbitrary), otherwise with identity chains, zero linear terms, zero
 * couplings and ascending orders.
 */
inline GeneralizedQuadraticSpec parse_spec(const json& j, Construction kind) {
  GeneralizedQuadraticSpec s;
  s.domain = parse_domain(j.at("domain"));
  const auto& d = s.domain;
  const auto q = d.modulus();
  std::optional<random::Engine> rng;
  if (j.contains("seed")) rng.emplace(j.at("seed").get<std::uint64_t>());
  random::Engine* r = rng ? &*rng : nullptr;

  std::vector<std::size_t> restricted;
  if (j.contains("restricted")) {
    for (const auto& v : j.at("restricted")) restricted.push_back(detail::position(v, d, "restricted"));
  }
  if ((kind == Construction::theorem1 || kind == Construction::theorem2) && !restricted.empty()) {
    throw ConfigError("theorem1/theorem2 take no restricted variables; use corollary1/corollary3");
  }
  if ((kind == Construction::theorem1 || kind == Construction::corollary1) && !d.is_uniform()) {
    throw ConfigError("theorem1/corollary1 need a {\"q\", \"m\"} domain");
  }
  if (kind == Construction::theorem2 && d.block_count() != 2) throw ConfigError("theorem2 needs exactly two blocks");
  s.restricted = RestrictionSet(d, restricted);

  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto p = d.block(i).radix;
    const auto links = d.block(i).exponent - s.restricted.count_in_block(i);
    std::vector<ChainLink> chain;
    if (j.contains("chains")) {
      if (j.at("chains").size() != d.block_count()) throw ConfigError("chains needs one list per block");
      const auto& row = j.at("chains")[i];
      for (std::size_t l = 0; l < row.size(); ++l) {
        const auto w = "block " + std::to_string(i + 1) + " link " + std::to_string(l + 1);
        chain.push_back({parse_table(row[l].at("first"), q, w + " first"), parse_table(row[l].at("second"), q, w + " second")});
      }
    } else {
      for (std::size_t l = 0; l + 1 < links; ++l) {
        chain.push_back(r ? ChainLink{random::permutation_table(*r, q, p), random::permutation_table(*r, q, p)}
                          : ChainLink{FuncTable::identity(q), FuncTable::identity(q)});
      }
    }
    s.chains.push_back(std::move(chain));
  }

  if (j.contains("couplings")) {
    for (const auto& c : j.at("couplings")) {
      s.couplings.push_back({c.at("weight").get<Residue>() % q, parse_table(c.at("left"), q, "coupling left"),
                             parse_table(c.at("right"), q, "coupling right")});
    }
  } else {
    for (std::size_t i = 0; i + 1 < d.block_count(); ++i) {
      s.couplings.push_back(r ? Coupling{random::draw(*r, q), random::table(*r, q), random::table(*r, q)}
                              : Coupling{0, FuncTable::constant(q, 0), FuncTable::constant(q, 0)});
    }
  }

  s.shared = detail::parse_terms(j, s, nullptr, r, "spec");
  if (j.contains("restrictions")) {
    for (const auto& [key, val] : j.at("restrictions").items()) {
      const auto c = std::stoull(key);
      if (c >= s.restricted.count()) throw ConfigError("restriction value " + key + " out of range");
      s.per_restriction[c] = detail::parse_terms(val, s, &s.shared, nullptr, "restriction " + key);
    }
  }
  if (j.contains("offsets")) {
    s.offsets = j.at("offsets").get<std::vector<Residue>>();
  } else if (kind == Construction::corollary1) {
    s.offsets = default_restriction_offsets(d, s.restricted);
  }
  try {
    validate_spec(s);
  } catch (const SpecError& e) {
    throw ConfigError(e.what());
  }

  if (j.contains("corrupt")) {
    const auto& c = j.at("corrupt");
    const auto block = c.at("block").get<std::size_t>();
    const auto link = c.at("link").get<std::size_t>();
    if (block < 1 || link < 1) throw ConfigError("corrupt block and link are 1-based");
    const auto side = c.value("side", std::string("first"));
    if (side != "first" && side != "second") throw ConfigError("corrupt side must be first or second");
    s = corrupt_spec(std::move(s), block - 1, link - 1, side == "first" ? LinkSide::first : LinkSide::second,
                     parse_table(c.at("table"), q, "corrupt table"));
  }
  return s;
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

inline CodeSet code_set_from_json(const json& j);

/// Builds the code set a config describes. Relative paths resolve against `base`.
inline CodeSet build_from_config(const json& j, const std::filesystem::path& base = ".") {
  const auto kind = parse_construction(j.at("construction").get<std::string>());
  if (kind == Construction::kronecker) {
    auto operand = [&](const char* key) {
      const auto& v = j.at(key);
      if (v.is_string()) {
        const auto path = base / v.get<std::string>();
        const auto inner = read_json(path);
        return inner.contains("codes") ? code_set_from_json(inner) : build_from_config(inner, path.parent_path());
      }
      return build_from_config(v, base);
    };
    return kronecker_compose(operand("outer"), operand("inner"));
  }
  const auto s = parse_spec(j, kind);
  switch (kind) {
    case Construction::theorem1:
      return build_code_set(s, IndexOrder::most_significant_first,
                            {"theorem1", {{"q", std::to_string(s.domain.modulus())}, {"m", std::to_string(s.domain.variable_count())}}});
    case Construction::corollary1:
      return build_corollary1(s);
    case Construction::theorem2:
      return build_code_set(s, IndexOrder::least_significant_first, {"theorem2", {}});
    default:
      return build_corollary3(s);
  }
}

// ---------------------------------------------------------------------------
// Code sets
// ---------------------------------------------------------------------------

inline json code_set_to_json(const CodeSet& c) {
  json codes = json::array();
  for (const auto& code : c.codes()) {
    json rows = json::array();
    for (const auto& s : code) {
      json row = json::array();
      for (auto e : s.entries()) {
        if (e == RootSequence::kNull) row.push_back(nullptr);
        else row.push_back(e);
      }
      rows.push_back(std::move(row));
    }
    codes.push_back(std::move(rows));
  }
  return {{"q", c.modulus()},
          {"L", c.length()},
          {"K", c.code_count()},
          {"M", c.sequences_per_code()},
          {"meta", {{"construction", c.meta().construction}, {"params", c.meta().params}}},
          {"codes", std::move(codes)}};
}

inline CodeSet code_set_from_json(const json& j) {
  try {
    const auto q = j.at("q").get<std::uint32_t>();
    std::vector<std::vector<RootSequence>> codes;
    for (const auto& code : j.at("codes")) {
      std::vector<RootSequence> rows;
      for (const auto& row : code) {
        std::vector<std::int32_t> entries;
        for (const auto& e : row) entries.push_back(e.is_null() ? RootSequence::kNull : e.get<std::int32_t>());
        rows.emplace_back(q, std::move(entries));
      }
      codes.push_back(std::move(rows));
    }
    CodeSetMeta meta;
    if (j.contains("meta")) {
      meta.construction = j.at("meta").value("construction", std::string());
      if (j.at("meta").contains("params")) meta.params = j.at("meta").at("params").get<std::map<std::string, std::string>>();
    }
    CodeSet c(q, std::move(codes), std::move(meta));
    if (j.contains("L") && j.at("L").get<std::size_t>() != c.length()) throw ShapeError("L disagrees with the sequences");
    if (j.contains("K") && j.at("K").get<std::size_t>() != c.code_count()) throw ShapeError("K disagrees with the codes");
    if (j.contains("M") && j.at("M").get<std::size_t>() != c.sequences_per_code()) throw ShapeError("M disagrees with the codes");
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed code set: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports and profiles
// ---------------------------------------------------------------------------

inline json report_to_json(const VerifyReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json e = {{"k1", x.k1}, {"k2", x.k2}, {"tau", x.tau}, {"re", x.value.real()}, {"im", x.value.imag()}};
    if (x.exact) e["counts"] = x.exact->counts();
    v.push_back(std::move(e));
  }
  return {{"is_ccc", r.is_ccc},
          {"conditions_hold", r.conditions_hold},
          {"peak", r.peak},
          {"mode", to_string(r.mode)},
          {"K", r.code_count},
          {"M", r.sequences_per_code},
          {"L", r.length},
          {"shifts_tested", r.shifts_tested},
          {"violation_count", r.violation_count},
          {"violations", std::move(v)}};
}

inline json probe_to_json(const ProbeEvidence& e) {
  json j = {{"outcome", to_string(e.outcome)}, {"witness_shifts", e.witness_shifts}};
  if (e.outcome == ProbeOutcome::violation_found) {
    j["k1"] = e.k1;
    j["k2"] = e.k2;
    j["tau"] = e.tau;
    j["at_witness_shift"] = e.at_witness_shift;
    if (e.value) {
      j["counts"] = e.value->counts();
      const auto z = e.value->to_complex();
      j["re"] = z.real();
      j["im"] = z.imag();
    }
  }
  return j;
}

inline void write_profile_csv(std::ostream& out, const CorrelationProfile& p, std::uint32_t q) {
  out << "tau";
  for (std::uint32_t j = 0; j < q; ++j) out << ",count_" << j;
  out << ",re,im,magnitude\n";
  char buf[96];
  for (const auto& e : p.entries) {
    out << e.tau;
    for (auto c : e.value.counts()) out << ',' << c;
    // Exact zeros print as 0 rather than round-off.
    const bool zero = is_zero_exact(e.value);
    std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g", zero ? 0.0 : e.complex.real(), zero ? 0.0 : e.complex.imag(),
                  zero ? 0.0 : e.magnitude());
    out << buf << '\n';
  }
}

}  // namespace ccc::io

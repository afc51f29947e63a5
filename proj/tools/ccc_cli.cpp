// ccc: build, verify and profile complete complementary codes.
//
// Exit status: 0 success / CCC, 1 verification failure, 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "ccc/ccc.hpp"
#include "ccc/io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw ccc::io::ConfigError("cannot write " + out);
  f << text << '\n';
}

ccc::VerifyMode parse_mode(const std::string& s) {
  if (s == "exact") return ccc::VerifyMode::exact;
  if (s == "float") return ccc::VerifyMode::floating;
  throw ccc::io::ConfigError("mode must be exact or float");
}

ccc::io::json load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  auto j = ccc::io::read_json(path);
  if (seed) j["seed"] = *seed;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete complementary code construction and exact verification"};
  app.require_subcommand(1);

  std::string config, codeset, out, mode = "exact";
  std::optional<std::uint64_t> seed;
  long long max_violations = static_cast<long long>(ccc::kDefaultMaxViolations);
  std::size_t k1 = 0, k2 = 0;

  auto* build = app.add_subcommand("build", "build a code set from a JSON config");
  build->add_option("config", config, "build config")->required()->check(CLI::ExistingFile);
  build->add_option("--seed", seed, "seed for unfilled slots (overrides the config)");
  build->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check the CCC property of a code-set file");
  verify->add_option("codeset", codeset, "code-set JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  verify->add_option("--max-violations", max_violations, "violations to list (-1 for all)");
  verify->add_option("--out", out, "report file (default stdout)");

  auto* profile = app.add_subcommand("profile", "correlation profile of two codes as CSV");
  profile->add_option("codeset", codeset, "code-set JSON")->required()->check(CLI::ExistingFile);
  profile->add_option("k1", k1, "first code index")->required();
  profile->add_option("k2", k2, "second code index")->required();
  profile->add_option("--out", out, "CSV file (default stdout)");

  auto* probe = app.add_subcommand("probe", "search a corrupted config for a correlation violation");
  probe->add_option("config", config, "build config with a corrupt section")->required()->check(CLI::ExistingFile);
  probe->add_option("--seed", seed, "seed for unfilled slots");
  probe->add_option("--out", out, "evidence file (default stdout)");

  auto* reproduce = app.add_subcommand("reproduce72", "rebuild and check the (12,72) worked example");
  reproduce->add_option("--out", out, "write the (12,72) code set here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build) {
      const auto j = load_config(config, seed);
      const auto c = ccc::io::build_from_config(j, std::filesystem::path(config).parent_path());
      emit(ccc::io::code_set_to_json(c).dump(), out);
      std::cerr << "built " << c.meta().construction << ": K=" << c.code_count() << " M=" << c.sequences_per_code()
                << " L=" << c.length() << " q=" << c.modulus() << '\n';
      return kOk;
    }
    if (*verify) {
      const auto c = ccc::io::code_set_from_json(ccc::io::read_json(codeset));
      const auto cap = max_violations < 0 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(max_violations);
      const auto rep = ccc::verify_ccc(c, parse_mode(mode), cap);
      emit(ccc::io::report_to_json(rep).dump(2), out);
      std::cerr << (rep.is_ccc ? "CCC" : "not a CCC") << " (" << ccc::to_string(rep.mode) << "), peak " << rep.peak
                << ", " << rep.violation_count << " violations\n";
      return rep.is_ccc ? kOk : kFail;
    }
    if (*profile) {
      const auto c = ccc::io::code_set_from_json(ccc::io::read_json(codeset));
      if (k1 >= c.code_count() || k2 >= c.code_count()) {
        std::cerr << "error: code index out of range (K=" << c.code_count() << ")\n";
        return kUsage;
      }
      const auto p = ccc::correlation_profile(c.row(k1), c.row(k2));
      std::ostringstream csv;
      ccc::io::write_profile_csv(csv, p, c.modulus());
      auto text = csv.str();
      text.pop_back();
      emit(text, out);
      return kOk;
    }
    if (*probe) {
      const auto j = load_config(config, seed);
      const auto s = ccc::io::parse_spec(j, ccc::io::parse_construction(j.at("construction").get<std::string>()));
      const auto ev = ccc::necessity_probe(s);
      emit(ccc::io::probe_to_json(ev).dump(2), out);
      if (ev.outcome == ccc::ProbeOutcome::rejected_not_corrupted) {
        std::cerr << "probe rejected: config has no corrupt section\n";
        return kUsage;
      }
      return ev.outcome == ccc::ProbeOutcome::violation_found ? kOk : kFail;
    }
    if (*reproduce) {
      bool ok = true;
      for (const auto& chk : ccc::example72::reproduce()) {
        std::printf("%s  %s%s%s\n", chk.ok ? "PASS" : "FAIL", chk.name.c_str(), chk.detail.empty() ? "" : "  ",
                    chk.detail.c_str());
        ok = ok && chk.ok;
      }
      if (!out.empty()) emit(ccc::io::code_set_to_json(ccc::example72::build()).dump(), out);
      return ok ? kOk : kFail;
    }
  } catch (const ccc::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ccc::io::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

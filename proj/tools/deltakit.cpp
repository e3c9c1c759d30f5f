#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltakit/block_tree.hpp"
#include "deltakit/error.hpp"
#include "deltakit/families.hpp"
#include "deltakit/measures.hpp"
#include "deltakit/oracles.hpp"
#include "deltakit/recompression.hpp"
#include "deltakit/report.hpp"
#include "deltakit/rlslp.hpp"

namespace fs = std::filesystem;
using deltakit::Text;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DELTA_KIT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 0);
    if (end == nullptr || *end != '\0') throw deltakit::InvalidInput("DELTA_KIT_SEED is not an integer");
    return v;
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

void emit_text(const Text& t, const std::string& out, int width) {
  if (!out.empty()) {
    deltakit::write_text_file(out, t, width);
    return;
  }
  std::vector<std::uint8_t> bytes;
  for (deltakit::Symbol c : t) {
    if (width == 1) {
      if (c > 255) throw deltakit::InvalidInput("symbol does not fit in a byte; use --width 4");
      bytes.push_back(static_cast<std::uint8_t>(c));
    } else {
      for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(c >> (8 * b)));
    }
  }
  std::fwrite(bytes.data(), 1, bytes.size(), stdout);
  std::fflush(stdout);
}

deltakit::Rlslp load_grammar(const std::string& path) {
  return deltakit::deserialize_rlslp(deltakit::read_binary_file(path));
}

deltakit::BlockTree load_tree(const std::string& path) {
  return deltakit::deserialize_block_tree(deltakit::read_binary_file(path));
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t j = s.find(',', i);
    const std::string tok = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok.c_str(), &end, 0);
    if (tok.empty() || *end != '\0') throw deltakit::InvalidInput("bad list element '" + tok + "'");
    out.push_back(v);
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-kit: substring complexity, run-length grammars and block trees"};
  app.require_subcommand(1);
  std::function<void()> action;

  // measure
  std::string m_in;
  int m_width = 1;
  bool m_brute = false, m_profile = false, m_no_timing = false;
  auto* measure = app.add_subcommand("measure", "delta, z and optionally brute-force gamma of a text");
  measure->add_option("input", m_in, "text file")->required();
  measure->add_option("--width", m_width, "bytes per symbol (1 or 4)")->check(CLI::IsMember({1, 4}));
  measure->add_flag("--brute", m_brute, "also compute gamma by exhaustive search (n <= 16)");
  measure->add_flag("--profile", m_profile, "include the d_k profile");
  measure->add_flag("--no-timing", m_no_timing, "report runtime_ms as 0");
  measure->callback([&] {
    action = [&] {
      const auto t0 = std::chrono::steady_clock::now();
      const Text t = deltakit::read_text_file(m_in, m_width);
      deltakit::require_nonempty(t, "measure");
      const auto p = deltakit::substring_complexity(t);
      json j;
      j["n"] = p.n;
      j["sigma"] = p.sigma;
      j["delta_num"] = p.delta_num;
      j["delta_den"] = p.delta_den;
      j["z"] = deltakit::lz_factorize(t).z();
      if (m_brute && t.size() <= deltakit::kAttractorSearchLimit) {
        j["gamma"] = deltakit::brute_smallest_attractor(t).gamma;
      }
      if (m_profile) j["d"] = p.d;
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      j["runtime_ms"] = m_no_timing ? 0.0 : ms;
      print_json(j);
    };
  });

  // gen
  std::string g_family = "s", g_out, g_choices;
  std::uint64_t g_n = 0, g_m = 2;
  std::optional<std::uint64_t> g_delta, g_seed;
  int g_width = 0;
  auto* gen = app.add_subcommand("gen", "generate a family string with a JSON sidecar");
  gen->add_option("--family", g_family, "s|sp|sr|gamma|entropy|sr-comp|perm")
      ->check(CLI::IsMember({"s", "sp", "sr", "gamma", "entropy", "sr-comp", "perm"}));
  gen->add_option("--n", g_n, "length")->required();
  gen->add_option("--delta", g_delta, "target delta (composite families)");
  gen->add_option("--m", g_m, "number of colors (sr)");
  gen->add_option("--choices", g_choices, "comma-separated positions, colors or permutation");
  gen->add_option("--seed", g_seed, "seed (falls back to DELTA_KIT_SEED)");
  gen->add_option("--out", g_out, "output file; the sidecar goes to <out>.json")->required();
  gen->add_option("--width", g_width, "bytes per symbol (default: 1 if all symbols fit)")
      ->check(CLI::IsMember({1, 4}));
  gen->callback([&] {
    action = [&] {
      deltakit::families::FamilySpec spec;
      spec.kind = deltakit::families::parse_kind(g_family);
      spec.n = g_n;
      spec.delta_target = g_delta;
      spec.m = g_m;
      if (!g_choices.empty()) spec.choices = parse_list(g_choices);
      spec.seed = resolve_seed(g_seed);
      const Text t = deltakit::families::generate(spec);
      deltakit::write_text_file(g_out, t, g_width == 0 ? deltakit::natural_symbol_width(t) : g_width);
      const json side = deltakit::family_sidecar_json(spec, t);
      const std::string s = side.dump(2) + "\n";
      deltakit::write_binary_file(g_out + ".json",
                                  std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
      print_json(side);
    };
  });

  // grammar
  auto* grammar = app.add_subcommand("grammar", "run-length grammars");
  grammar->require_subcommand(1);

  std::string gb_in, gb_out;
  int gb_width = 1;
  std::optional<std::uint64_t> gb_seed, gb_budget;
  std::uint32_t gb_attempts = 8;
  double gb_c0 = deltakit::kDefaultBudgetConstant;
  bool gb_unlimited = false;
  auto* gbuild = grammar->add_subcommand("build", "build a grammar by restricted recompression");
  gbuild->add_option("input", gb_in, "text file")->required();
  gbuild->add_option("--out", gb_out, "grammar file")->required();
  gbuild->add_option("--width", gb_width, "bytes per symbol (1 or 4)")->check(CLI::IsMember({1, 4}));
  gbuild->add_option("--seed", gb_seed, "seed (falls back to DELTA_KIT_SEED)");
  gbuild->add_option("--budget", gb_budget, "symbol budget (default 4 B(n, delta))");
  gbuild->add_option("--attempts", gb_attempts, "attempt cap")->check(CLI::PositiveNumber);
  gbuild->add_option("--c0", gb_c0, "budget constant")->check(CLI::PositiveNumber);
  gbuild->add_flag("--unlimited", gb_unlimited, "accept any size");
  gbuild->callback([&] {
    action = [&] {
      const Text t = deltakit::read_text_file(gb_in, gb_width);
      const std::uint64_t seed = resolve_seed(gb_seed);
      deltakit::BuildOptions o;
      o.size_budget = gb_budget;
      o.attempt_cap = gb_attempts;
      o.budget_constant = gb_c0;
      o.unlimited_size = gb_unlimited;
      const auto outcome = deltakit::build_grammar(t, seed, o);
      deltakit::write_binary_file(gb_out, deltakit::serialize(outcome.grammar));
      json j = deltakit::grammar_stats_json(deltakit::grammar_stats(outcome.grammar));
      j["seed"] = seed;
      j["seed_used"] = outcome.seed_used;
      j["attempts"] = outcome.attempts;
      if (!gb_unlimited) j["budget"] = outcome.size_budget;
      print_json(j);
    };
  });

  std::string gv_in, gv_text;
  int gv_width = 1;
  std::uint64_t gv_cap = deltakit::VerifyOptions{}.period_cap;
  auto* gverify = grammar->add_subcommand("verify", "check grammar invariants and the run period law");
  gverify->add_option("grammar", gv_in, "grammar file")->required();
  gverify->add_option("--text", gv_text, "reference text to compare the expansion with");
  gverify->add_option("--width", gv_width, "bytes per symbol of --text")->check(CLI::IsMember({1, 4}));
  gverify->add_option("--period-cap", gv_cap, "largest run expansion checked for its period");
  gverify->callback([&] {
    action = [&] {
      const auto g = load_grammar(gv_in);
      std::optional<Text> ref;
      if (!gv_text.empty()) ref = deltakit::read_text_file(gv_text, gv_width);
      const auto rep = deltakit::verify(g, ref ? &*ref : nullptr, {gv_cap});
      json j;
      j["ok"] = rep.ok();
      j["lengths_ok"] = rep.lengths_ok;
      j["structure_ok"] = rep.structure_ok;
      j["run_rules_checked"] = rep.run_rules_checked;
      j["run_rules_skipped"] = rep.run_rules_skipped;
      j["period_violations"] = rep.period_violations;
      if (rep.reference_match) j["reference_match"] = *rep.reference_match;
      j["violations"] = rep.violations;
      print_json(j);
      if (!rep.ok()) throw VerificationFailed("grammar verification failed");
    };
  });

  std::string ge_in, ge_out;
  std::uint64_t ge_pos = 0, ge_len = 0;
  int ge_width = 1;
  auto* gextract = grammar->add_subcommand("extract", "extract text[pos, pos+len) (0-based)");
  gextract->add_option("grammar", ge_in, "grammar file")->required();
  gextract->add_option("--pos", ge_pos, "start position")->required();
  gextract->add_option("--len", ge_len, "length")->required();
  gextract->add_option("--out", ge_out, "output file (default stdout)");
  gextract->add_option("--width", ge_width, "bytes per symbol")->check(CLI::IsMember({1, 4}));
  gextract->callback([&] {
    action = [&] { emit_text(deltakit::extract(load_grammar(ge_in), ge_pos, ge_len), ge_out, ge_width); };
  });

  std::string gs_in;
  auto* gstats = grammar->add_subcommand("stats", "grammar statistics");
  gstats->add_option("grammar", gs_in, "grammar file")->required();
  gstats->callback([&] {
    action = [&] { print_json(deltakit::grammar_stats_json(deltakit::grammar_stats(load_grammar(gs_in)))); };
  });

  // bt
  auto* bt = app.add_subcommand("bt", "block trees");
  bt->require_subcommand(1);

  std::string bb_in, bb_out;
  int bb_width = 1;
  deltakit::BlockTreeOptions bb_opts;
  bool bb_no_fp = false;
  auto* bbuild = bt->add_subcommand("build", "build a block tree");
  bbuild->add_option("input", bb_in, "text file")->required();
  bbuild->add_option("--out", bb_out, "tree file")->required();
  bbuild->add_option("--width", bb_width, "bytes per symbol (1 or 4)")->check(CLI::IsMember({1, 4}));
  bbuild->add_option("--tau", bb_opts.tau, "branching factor")->check(CLI::Range(2, 1 << 20));
  bbuild->add_option("--s", bb_opts.s, "top-level block count (default ceil(delta))");
  bbuild->add_option("--leaf-len", bb_opts.leaf_len, "leaf block length (default from sigma)");
  bbuild->add_flag("--fp", bb_opts.fingerprint_leaves, "one-symbol leaves for fingerprint queries");
  bbuild->add_option("--fp-seed", bb_opts.fingerprint_seed, "seed of the fingerprint base");
  bbuild->add_flag("--no-fingerprints", bb_no_fp, "omit fingerprint annotations");
  bbuild->callback([&] {
    action = [&] {
      const Text t = deltakit::read_text_file(bb_in, bb_width);
      bb_opts.fingerprints = !bb_no_fp;
      const auto tree = deltakit::build_block_tree(t, bb_opts);
      deltakit::write_binary_file(bb_out, deltakit::serialize(tree));
      print_json(deltakit::block_tree_stats_json(tree.stats()));
    };
  });

  std::string ba_in;
  std::uint64_t ba_pos = 0;
  auto* baccess = bt->add_subcommand("access", "symbol at a 0-based position");
  baccess->add_option("tree", ba_in, "tree file")->required();
  baccess->add_option("--pos", ba_pos, "position")->required();
  baccess->callback([&] {
    action = [&] {
      json j;
      j["pos"] = ba_pos;
      j["symbol"] = load_tree(ba_in).access(ba_pos);
      print_json(j);
    };
  });

  std::string be_in, be_out;
  std::uint64_t be_pos = 0, be_len = 0;
  int be_width = 1;
  auto* bextract = bt->add_subcommand("extract", "extract text[pos, pos+len) (0-based)");
  bextract->add_option("tree", be_in, "tree file")->required();
  bextract->add_option("--pos", be_pos, "start position")->required();
  bextract->add_option("--len", be_len, "length")->required();
  bextract->add_option("--out", be_out, "output file (default stdout)");
  bextract->add_option("--width", be_width, "bytes per symbol")->check(CLI::IsMember({1, 4}));
  bextract->callback([&] { action = [&] { emit_text(load_tree(be_in).extract(be_pos, be_len), be_out, be_width); }; });

  std::string bf_in;
  std::uint64_t bf_from = 0, bf_to = 0;
  auto* bfp = bt->add_subcommand("fp", "fingerprint of text[from, to) (0-based, half-open)");
  bfp->add_option("tree", bf_in, "tree file")->required();
  bfp->add_option("--from", bf_from, "start position")->required();
  bfp->add_option("--to", bf_to, "end position")->required();
  bfp->callback([&] {
    action = [&] {
      if (bf_to < bf_from) throw deltakit::InvalidInput("--to must be >= --from");
      const auto tree = load_tree(bf_in);
      const auto f = tree.fingerprint(bf_from, bf_to - bf_from);
      json j;
      j["from"] = bf_from;
      j["to"] = bf_to;
      j["base"] = tree.group().base();
      j["value"] = f.value;
      j["shift"] = f.shift;
      print_json(j);
    };
  });

  std::string bs_in;
  auto* bstats = bt->add_subcommand("stats", "per-level block counts");
  bstats->add_option("tree", bs_in, "tree file")->required();
  bstats->callback([&] { action = [&] { print_json(deltakit::block_tree_stats_json(load_tree(bs_in).stats())); }; });

  // bench
  std::string bn_family = "s", bn_ns = "1024", bn_seeds, bn_format = "json";
  std::optional<std::uint64_t> bn_delta;
  bool bn_no_timing = false;
  auto* bench = app.add_subcommand("bench", "sweep a family over lengths and seeds");
  bench->add_option("--family", bn_family, "s|sp|sr|gamma|entropy|sr-comp|perm")
      ->check(CLI::IsMember({"s", "sp", "sr", "gamma", "entropy", "sr-comp", "perm"}));
  bench->add_option("--n", bn_ns, "comma-separated lengths");
  bench->add_option("--seeds", bn_seeds, "comma-separated seeds (default: one from DELTA_KIT_SEED or random)");
  bench->add_option("--delta", bn_delta, "target delta (composite families)");
  bench->add_option("--format", bn_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  bench->add_flag("--no-timing", bn_no_timing, "report wall_ms as 0");
  bench->callback([&] {
    action = [&] {
      const auto kind = deltakit::families::parse_kind(bn_family);
      const auto ns = parse_list(bn_ns);
      const auto seeds = bn_seeds.empty() ? std::vector<std::uint64_t>{resolve_seed(std::nullopt)} : parse_list(bn_seeds);
      std::vector<deltakit::BenchRow> rows;
      for (std::uint64_t n : ns) {
        for (std::uint64_t seed : seeds) rows.push_back(deltakit::bench_row(kind, n, seed, bn_delta, !bn_no_timing));
      }
      if (bn_format == "csv") {
        std::cout << deltakit::bench_csv_header() << '\n';
        for (const auto& r : rows) std::cout << deltakit::bench_csv_line(r) << '\n';
        return;
      }
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"family", r.family},
                       {"n", r.n},
                       {"delta_num", r.delta.num},
                       {"delta_den", r.delta.den},
                       {"z", r.z},
                       {"grammar_size", r.grammar_size},
                       {"bt_total_blocks", r.bt_total_blocks},
                       {"rounds", r.rounds},
                       {"wall_ms", r.wall_ms},
                       {"seed", r.seed}});
      }
      print_json(arr);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (action) action();
    return 0;
  } catch (const VerificationFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  } catch (const deltakit::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const deltakit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
}

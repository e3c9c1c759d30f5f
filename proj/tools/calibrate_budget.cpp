// Pilot sweep for the grammar budget constant c0: mean symbol count over
// seeds divided by ceil(delta) * (log2(n / ceil(delta)) + 2), per cell.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltakit/families.hpp"
#include "deltakit/measures.hpp"
#include "deltakit/recompression.hpp"

using deltakit::Text;

namespace {

Text random_text(std::uint64_t n, std::uint32_t sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, sigma - 1);
  std::vector<deltakit::Symbol> s(n);
  for (auto& c : s) c = 'a' + dist(rng);
  return Text(std::move(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibrate the grammar budget constant"};
  std::uint32_t min_exp = 10, max_exp = 20, step = 2, seeds = 5;
  app.add_option("--min-exp", min_exp, "smallest log2 n");
  app.add_option("--max-exp", max_exp, "largest log2 n");
  app.add_option("--step", step, "exponent step")->check(CLI::PositiveNumber);
  app.add_option("--seeds", seeds, "seeds per cell")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  using Gen = Text (*)(std::uint64_t, std::uint64_t);
  const std::vector<std::pair<std::string, Gen>> corpus = {
      {"random2", [](std::uint64_t n, std::uint64_t s) { return random_text(n, 2, s); }},
      {"random4", [](std::uint64_t n, std::uint64_t s) { return random_text(n, 4, s); }},
      {"s", [](std::uint64_t n, std::uint64_t) { return deltakit::families::gen_S(n); }},
      {"sp", [](std::uint64_t n, std::uint64_t s) { return deltakit::families::gen_Sp_seeded(n, s); }},
      {"gamma8", [](std::uint64_t n, std::uint64_t) { return deltakit::families::gen_composite_gamma(n, 8); }},
  };

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  double worst = 0;
  for (const auto& [name, gen] : corpus) {
    for (std::uint32_t e = min_exp; e <= max_exp; e += step) {
      const std::uint64_t n = 1ULL << e;
      double sum = 0, max_ratio = 0;
      std::uint64_t delta_ceil = 0;
      for (std::uint32_t s = 0; s < seeds; ++s) {
        const Text t = gen(n, 1000 + s);
        const auto d = deltakit::delta(t);
        delta_ceil = d.ceil();
        const double unit = deltakit::expected_size_bound(n, d, 1.0);
        const auto built = deltakit::build_grammar_once(t, 7 + s);
        const double ratio = static_cast<double>(built.grammar.table().size()) / unit;
        sum += ratio;
        max_ratio = std::max(max_ratio, ratio);
      }
      const double mean = sum / seeds;
      worst = std::max(worst, mean);
      cells.push_back({{"corpus", name}, {"n", n}, {"delta_ceil", delta_ceil}, {"mean_ratio", mean},
                       {"max_ratio", max_ratio}});
      std::cerr << name << " n=2^" << e << " mean=" << mean << " max=" << max_ratio << '\n';
    }
  }
  nlohmann::ordered_json out;
  out["cells"] = cells;
  out["max_mean_ratio"] = worst;
  out["suggested_c0"] = std::ceil(worst);
  std::cout << out.dump(2) << '\n';
}

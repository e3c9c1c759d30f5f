#include "deltakit/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "deltakit/error.hpp"
#include "deltakit/measures.hpp"

namespace deltakit::families {

namespace {

std::uint64_t floor_log2(std::uint64_t n) { return static_cast<std::uint64_t>(std::bit_width(n)) - 1; }

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::uint64_t part_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// n_total split into m parts: floor share each, remainder one each from the left.
std::vector<std::uint64_t> split_lengths(std::uint64_t total, std::uint64_t m) {
  std::vector<std::uint64_t> parts(m, total / m);
  for (std::uint64_t i = 0; i < total % m; ++i) ++parts[i];
  return parts;
}

void verify_delta(const Text& t, std::uint64_t delta_target, const char* what) {
  const Ratio d = delta(t);
  if (d.den != 1 || d.num != delta_target) {
    throw InternalError(std::string(what) + ": measured delta " + std::to_string(d.num) + "/" +
                        std::to_string(d.den) + " != target " + std::to_string(delta_target));
  }
}

std::vector<std::uint64_t> identity_permutation(std::uint64_t k) {
  std::vector<std::uint64_t> pi(k);
  for (std::uint64_t i = 0; i < k; ++i) pi[i] = i + 1;
  return pi;
}

// Parts relabeled to (a_i, b_i) = ('a' + 2i, 'a' + 2i + 1), delimiters after them.
Text join_relabeled(const std::vector<Text>& parts, std::uint64_t extra) {
  const std::uint64_t m = parts.size();
  const Symbol delim0 = kA + static_cast<Symbol>(2 * m);
  std::vector<Symbol> out;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (i > 0) out.push_back(delim0 + static_cast<Symbol>(i - 1));
    for (Symbol c : parts[i]) out.push_back((c == kA ? kA : kA + 1) + static_cast<Symbol>(2 * i));
  }
  for (std::uint64_t j = 0; j < extra; ++j) out.push_back(delim0 + static_cast<Symbol>(m - 1 + j));
  return Text(std::move(out));
}

template <typename MakePart>
Text composite(std::uint64_t n, std::uint64_t delta_target, const char* what, MakePart make_part) {
  if (delta_target < 2 || delta_target > n) throw InvalidInput(std::string(what) + ": need 2 <= delta <= n");
  if (delta_target >= ceil_div(3 * n, 4)) {
    const auto pi = identity_permutation(delta_target);
    return gen_perm_tail(n, delta_target, pi);
  }
  const auto lengths = composite_part_lengths(n, delta_target);
  std::vector<Text> parts;
  for (std::uint64_t i = 0; i < lengths.size(); ++i) parts.push_back(make_part(lengths[i], i));
  Text out = join_relabeled(parts, (delta_target + 1) % 3);
  verify_delta(out, delta_target, what);
  return out;
}

}  // namespace

Text gen_S(std::uint64_t n) {
  if (n < 1) throw InvalidInput("gen_S: n must be >= 1");
  std::vector<Symbol> s(n, kA);
  for (std::uint64_t p = 1; p <= n; p *= 2) s[p - 1] = kB;
  return Text(std::move(s));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sp_windows(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> w;
  // Window of the jth b: [2 * 4^(j-2) + 1, 4^(j-1)].
  for (std::uint64_t q = 1; 2 * q + 1 <= n; q *= 4) w.emplace_back(2 * q + 1, std::min(4 * q, n));
  return w;
}

Text gen_Sp(std::uint64_t n, std::span<const std::uint64_t> choices) {
  if (n < 1) throw InvalidInput("gen_Sp: n must be >= 1");
  const auto windows = sp_windows(n);
  if (choices.size() != windows.size()) {
    throw InvalidInput("gen_Sp: expected " + std::to_string(windows.size()) + " choices, got " +
                       std::to_string(choices.size()));
  }
  std::vector<Symbol> s(n, kA);
  s[0] = kB;
  for (std::size_t j = 0; j < windows.size(); ++j) {
    const auto [lo, hi] = windows[j];
    if (choices[j] < lo || choices[j] > hi) {
      throw InvalidInput("gen_Sp: choice " + std::to_string(choices[j]) + " outside [" + std::to_string(lo) + ".." +
                         std::to_string(hi) + "]");
    }
    s[choices[j] - 1] = kB;
  }
  return Text(std::move(s));
}

Text gen_Sp_seeded(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> choices;
  for (const auto& [lo, hi] : sp_windows(n)) choices.push_back(std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng));
  return gen_Sp(n, choices);
}

double sp_log2_cardinality(std::uint64_t n) {
  double bits = 0;
  for (std::uint64_t q = 1; 4 * q <= n; q *= 4) bits += std::log2(static_cast<double>(2 * q));
  return bits;
}

std::uint64_t sr_color_count(std::uint64_t n) { return n == 0 ? 0 : 1 + floor_log2(n); }

Text gen_Sr(std::uint64_t n, std::uint64_t m, std::span<const std::uint64_t> colors) {
  if (n < 1) throw InvalidInput("gen_Sr: n must be >= 1");
  if (m < 1) throw InvalidInput("gen_Sr: m must be >= 1");
  if (colors.size() != sr_color_count(n)) {
    throw InvalidInput("gen_Sr: expected " + std::to_string(sr_color_count(n)) + " colors, got " +
                       std::to_string(colors.size()));
  }
  std::vector<Symbol> s(n, kA);
  std::size_t j = 0;
  for (std::uint64_t p = 1; p <= n; p *= 2, ++j) {
    if (colors[j] < 1 || colors[j] > m) throw InvalidInput("gen_Sr: color out of [1..m]");
    s[p - 1] = kA + static_cast<Symbol>(colors[j]);
  }
  return Text(std::move(s));
}

Text gen_Sr_seeded(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  if (m < 1) throw InvalidInput("gen_Sr: m must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, m);
  std::vector<std::uint64_t> colors(sr_color_count(n));
  for (auto& c : colors) c = dist(rng);
  return gen_Sr(n, m, colors);
}

double sr_log2_cardinality(std::uint64_t n, std::uint64_t m) {
  return static_cast<double>(sr_color_count(n)) * std::log2(static_cast<double>(m));
}

std::vector<std::uint64_t> composite_part_lengths(std::uint64_t n, std::uint64_t delta_target) {
  const std::uint64_t m = (delta_target + 1) / 3;
  const std::uint64_t extra = (delta_target + 1) % 3;
  if (m == 0 || n < extra || n - extra < 4 * m - 1) {
    throw InvalidInput("composite: n = " + std::to_string(n) + " too small for delta " + std::to_string(delta_target));
  }
  return split_lengths(n - extra - m + 1, m);
}

Text gen_composite_gamma(std::uint64_t n, std::uint64_t delta_target) {
  return composite(n, delta_target, "gen_composite_gamma",
                   [](std::uint64_t len, std::uint64_t) { return gen_S(len); });
}

Text gen_composite_entropy(std::uint64_t n, std::uint64_t delta_target, std::uint64_t seed) {
  return composite(n, delta_target, "gen_composite_entropy",
                   [seed](std::uint64_t len, std::uint64_t i) { return gen_Sp_seeded(len, part_seed(seed, i)); });
}

namespace {

struct SrShape {
  std::uint64_t m;
  std::uint64_t extra;
  std::vector<std::uint64_t> parts;
};

SrShape sr_shape(std::uint64_t n, std::uint64_t delta_target) {
  if (delta_target < 2 || delta_target >= ceil_div(3 * n, 4)) {
    throw InvalidInput("gen_composite_Sr: need 2 <= delta < ceil(3n/4)");
  }
  SrShape sh;
  sh.m = (delta_target + 1) / 3;
  sh.extra = (delta_target + 1) % 3;
  if (n < sh.extra || n - sh.extra < 4 * sh.m - 1) {
    throw InvalidInput("gen_composite_Sr: n = " + std::to_string(n) + " too small for delta " +
                       std::to_string(delta_target));
  }
  sh.parts = split_lengths(n - sh.extra - 3 * sh.m + 1, sh.m);
  return sh;
}

bool reaches(const SubstringComplexityProfile& p, std::uint64_t ratio) {
  for (std::uint64_t k = 1; k <= p.n; ++k) {
    if (p.count(k) >= ratio * k) return true;
  }
  return false;
}

}  // namespace

std::uint64_t composite_Sr_slots(std::uint64_t n, std::uint64_t delta_target) {
  std::uint64_t slots = 0;
  for (std::uint64_t len : sr_shape(n, delta_target).parts) slots += sr_color_count(len);
  return slots;
}

Text gen_composite_Sr(std::uint64_t n, std::uint64_t delta_target, std::span<const std::uint64_t> colors) {
  const SrShape sh = sr_shape(n, delta_target);
  const std::uint64_t m = sh.m;
  const Symbol delim0 = kA + static_cast<Symbol>(m + 1);

  std::vector<Symbol> out;
  std::size_t used = 0;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (i > 0) out.push_back(delim0 + static_cast<Symbol>(i - 1));
    const std::uint64_t slots = sr_color_count(sh.parts[i]);
    if (used + slots > colors.size()) throw InvalidInput("gen_composite_Sr: too few colors");
    const Text part = gen_Sr(sh.parts[i], m, colors.subspan(used, slots));
    used += slots;
    out.insert(out.end(), part.begin(), part.end());
  }
  if (used != colors.size()) throw InvalidInput("gen_composite_Sr: too many colors");
  out.insert(out.end(), 2 * m, kA);

  // Overwrite the tail from its end with fresh delimiters until some
  // d_k >= (3m - 1) k.
  Symbol next_delim = delim0 + static_cast<Symbol>(m - 1);
  std::uint64_t replaced = 0;
  while (!reaches(substring_complexity(Text(out)), 3 * m - 1)) {
    if (replaced >= 2 * m - 2) {
      throw InternalError("gen_composite_Sr: delimiter padding did not terminate within 2m-2 steps");
    }
    out[out.size() - 1 - replaced] = next_delim++;
    ++replaced;
  }
  for (std::uint64_t j = 0; j < sh.extra; ++j) out.push_back(next_delim++);

  Text result(std::move(out));
  verify_delta(result, delta_target, "gen_composite_Sr");
  return result;
}

Text gen_composite_Sr_seeded(std::uint64_t n, std::uint64_t delta_target, std::uint64_t seed) {
  const std::uint64_t m = (delta_target + 1) / 3;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, std::max<std::uint64_t>(m, 1));
  std::vector<std::uint64_t> colors(composite_Sr_slots(n, delta_target));
  for (auto& c : colors) c = dist(rng);
  return gen_composite_Sr(n, delta_target, colors);
}

Text gen_perm_tail(std::uint64_t n, std::uint64_t delta_target, std::span<const std::uint64_t> pi) {
  if (delta_target < 1 || delta_target > n) throw InvalidInput("gen_perm_tail: need 1 <= delta <= n");
  if (delta_target < ceil_div(3 * n, 4)) throw InvalidInput("gen_perm_tail: need delta >= ceil(3n/4)");
  if (pi.size() != delta_target) throw InvalidInput("gen_perm_tail: permutation has the wrong length");
  std::vector<bool> seen(delta_target + 1, false);
  for (std::uint64_t v : pi) {
    if (v < 1 || v > delta_target || seen[v]) throw InvalidInput("gen_perm_tail: not a permutation of [1..delta]");
    seen[v] = true;
  }
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::uint64_t v : pi) out.push_back(kA + static_cast<Symbol>(v - 1));
  out.insert(out.end(), n - delta_target, out.back());
  Text result(std::move(out));
  verify_delta(result, delta_target, "gen_perm_tail");
  return result;
}

Kind parse_kind(std::string_view name) {
  if (name == "s") return Kind::S;
  if (name == "sp") return Kind::Sp;
  if (name == "sr") return Kind::Sr;
  if (name == "gamma") return Kind::CompositeGamma;
  if (name == "entropy") return Kind::CompositeEntropy;
  if (name == "sr-comp") return Kind::CompositeSr;
  if (name == "perm") return Kind::PermTail;
  throw InvalidInput("unknown family '" + std::string(name) + "'");
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::S: return "s";
    case Kind::Sp: return "sp";
    case Kind::Sr: return "sr";
    case Kind::CompositeGamma: return "gamma";
    case Kind::CompositeEntropy: return "entropy";
    case Kind::CompositeSr: return "sr-comp";
    case Kind::PermTail: return "perm";
  }
  return "?";
}

Text generate(const FamilySpec& spec) {
  auto need_delta = [&]() {
    if (!spec.delta_target) throw InvalidInput(std::string(kind_name(spec.kind)) + ": --delta is required");
    return *spec.delta_target;
  };
  switch (spec.kind) {
    case Kind::S:
      return gen_S(spec.n);
    case Kind::Sp:
      return spec.choices ? gen_Sp(spec.n, *spec.choices) : gen_Sp_seeded(spec.n, spec.seed);
    case Kind::Sr:
      return spec.choices ? gen_Sr(spec.n, spec.m, *spec.choices) : gen_Sr_seeded(spec.n, spec.m, spec.seed);
    case Kind::CompositeGamma:
      return gen_composite_gamma(spec.n, need_delta());
    case Kind::CompositeEntropy:
      return gen_composite_entropy(spec.n, need_delta(), spec.seed);
    case Kind::CompositeSr:
      return spec.choices ? gen_composite_Sr(spec.n, need_delta(), *spec.choices)
                          : gen_composite_Sr_seeded(spec.n, need_delta(), spec.seed);
    case Kind::PermTail: {
      const std::uint64_t d = need_delta();
      return gen_perm_tail(spec.n, d, spec.choices ? *spec.choices : identity_permutation(d));
    }
  }
  throw InvalidInput("unknown family");
}

}  // namespace deltakit::families

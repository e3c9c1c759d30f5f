#include "deltakit/measures.hpp"

#include <cmath>

#include "deltakit/error.hpp"
#include "deltakit/suffix_array.hpp"

namespace deltakit {

SubstringComplexityProfile substring_complexity(const Text& text) {
  require_nonempty(text, "substring_complexity");
  const std::size_t n = text.size();

  std::vector<std::int32_t> ranks;
  const std::size_t sigma = rank_reduce(text.symbols(), ranks);
  const auto sa = suffix_array(ranks, static_cast<std::int32_t>(sigma - 1));
  const auto lcp = lcp_array(text, sa);

  // d_k = #{suffixes with length >= k} - #{adjacent LCP values >= k}
  std::vector<std::uint64_t> lcp_ge(n + 2, 0);
  for (std::size_t i = 1; i < n; ++i) ++lcp_ge[static_cast<std::size_t>(lcp[i])];
  for (std::size_t k = n; k-- > 0;) lcp_ge[k] += lcp_ge[k + 1];

  SubstringComplexityProfile p;
  p.n = n;
  p.sigma = sigma;
  p.d.resize(n);
  p.delta_num = 0;
  p.delta_den = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::uint64_t dk = (n - k + 1) - lcp_ge[k];
    p.d[k - 1] = dk;
    // strict comparison keeps the smallest maximizing k
    if (dk * p.delta_den > p.delta_num * k) {
      p.delta_num = dk;
      p.delta_den = k;
    }
  }
  return p;
}

Ratio delta(const Text& text) { return substring_complexity(text).delta(); }

LzParse lz_factorize(const Text& text) {
  require_nonempty(text, "lz_factorize");
  const std::size_t n = text.size();
  const auto sa = suffix_array(text);

  // Nearest suffixes (in SA order, on both sides) with a smaller text position.
  // The longest earlier match of any suffix is with one of these two.
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> psv(n, kNone), nsv(n, kNone);
  std::vector<std::int64_t> stack;
  stack.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::int64_t pos = sa[r];
    while (!stack.empty() && stack.back() > pos) {
      nsv[static_cast<std::size_t>(stack.back())] = pos;
      stack.pop_back();
    }
    psv[static_cast<std::size_t>(pos)] = stack.empty() ? kNone : stack.back();
    stack.push_back(pos);
  }

  auto match_len = [&](std::size_t i, std::int64_t j) -> std::size_t {
    if (j == kNone) return 0;
    std::size_t h = 0;
    const auto src = static_cast<std::size_t>(j);
    while (i + h < n && text[src + h] == text[i + h]) ++h;
    return h;
  };

  LzParse parse;
  std::size_t i = 0;
  while (i < n) {
    const std::size_t lp = match_len(i, psv[i]);
    const std::size_t ln = match_len(i, nsv[i]);
    LzPhrase ph;
    ph.start = i;
    if (lp == 0 && ln == 0) {
      ph.length = 1;
      ph.literal = text[i];
    } else if (lp >= ln) {
      ph.length = lp;
      ph.source = static_cast<std::uint64_t>(psv[i]);
    } else {
      ph.length = ln;
      ph.source = static_cast<std::uint64_t>(nsv[i]);
    }
    parse.phrases.push_back(ph);
    i += ph.length;
  }
  return parse;
}

Text lz_decode(const LzParse& parse) {
  std::vector<Symbol> out;
  for (const auto& ph : parse.phrases) {
    if (ph.start != out.size()) throw InvalidInput("lz_decode: phrases do not tile the text");
    if (!ph.source) {
      out.push_back(ph.literal);
      continue;
    }
    for (std::uint64_t t = 0; t < ph.length; ++t) out.push_back(out.at(*ph.source + t));
  }
  return Text(std::move(out));
}

double lz_upper_bound(std::uint64_t n, Ratio delta) {
  const double d = delta.value();
  return 4.0 * (d * std::log2(static_cast<double>(n) / d) + d);
}

std::uint64_t smallest_period(std::span<const Symbol> s) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidInput("smallest_period: empty text");
  std::vector<std::size_t> border(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = border[k];
    if (s[i] == s[k]) ++k;
    border[i + 1] = k;
  }
  return n - border[n];
}

}  // namespace deltakit

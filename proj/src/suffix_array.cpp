#include "deltakit/suffix_array.hpp"

#include <algorithm>
#include <numeric>

#include "deltakit/error.hpp"

namespace deltakit {

namespace {

using Index = std::int32_t;

std::vector<Index> sais(std::span<const Index> s, Index upper);

std::vector<Index> sort_small(std::span<const Index> s) {
  std::vector<Index> sa(s.size());
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(), [&](Index a, Index b) {
    return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
  });
  return sa;
}

// Induced sorting over s with values in [0, upper]. Every position is typed
// S or L; LMS substrings are sorted, named, and sorted recursively.
std::vector<Index> sais(std::span<const Index> s, Index upper) {
  const Index n = static_cast<Index>(s.size());
  if (n < 10) return sort_small(s);

  std::vector<Index> sa(n);
  std::vector<bool> is_s(n);
  for (Index i = n - 2; i >= 0; --i) {
    is_s[i] = (s[i] == s[i + 1]) ? is_s[i + 1] : (s[i] < s[i + 1]);
  }

  // Bucket starts: sum_l[c] = first slot of bucket c, sum_s[c] = first S slot.
  std::vector<Index> sum_l(upper + 2, 0), sum_s(upper + 2, 0);
  for (Index i = 0; i < n; ++i) {
    if (!is_s[i]) {
      ++sum_s[s[i]];
    } else {
      ++sum_l[s[i] + 1];
    }
  }
  for (Index c = 0; c <= upper; ++c) {
    sum_s[c] += sum_l[c];
    if (c < upper) sum_l[c + 1] += sum_s[c];
  }

  std::vector<Index> buf(upper + 2);
  auto induce = [&](const std::vector<Index>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::copy(sum_s.begin(), sum_s.end(), buf.begin());
    for (Index d : lms) {
      if (d == n) continue;
      sa[buf[s[d]]++] = d;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    sa[buf[s[n - 1]]++] = n - 1;
    for (Index i = 0; i < n; ++i) {
      Index v = sa[i];
      if (v >= 1 && !is_s[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    for (Index i = n - 1; i >= 0; --i) {
      Index v = sa[i];
      if (v >= 1 && is_s[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<Index> lms_map(n + 1, -1);
  std::vector<Index> lms;
  for (Index i = 1; i < n; ++i) {
    if (!is_s[i - 1] && is_s[i]) {
      lms_map[i] = static_cast<Index>(lms.size());
      lms.push_back(i);
    }
  }
  const Index m = static_cast<Index>(lms.size());

  induce(lms);

  if (m > 0) {
    std::vector<Index> sorted_lms;
    sorted_lms.reserve(m);
    for (Index v : sa) {
      if (lms_map[v] != -1) sorted_lms.push_back(v);
    }
    std::vector<Index> rec_s(m);
    Index rec_upper = 0;
    rec_s[lms_map[sorted_lms[0]]] = 0;
    for (Index i = 1; i < m; ++i) {
      Index l = sorted_lms[i - 1], r = sorted_lms[i];
      Index end_l = (lms_map[l] + 1 < m) ? lms[lms_map[l] + 1] : n;
      Index end_r = (lms_map[r] + 1 < m) ? lms[lms_map[r] + 1] : n;
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l) {
          if (s[l] != s[r]) break;
          ++l;
          ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++rec_upper;
      rec_s[lms_map[sorted_lms[i]]] = rec_upper;
    }

    auto rec_sa = sais(rec_s, rec_upper);
    for (Index i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    induce(sorted_lms);
  }
  return sa;
}

}  // namespace

std::size_t rank_reduce(std::span<const Symbol> symbols, std::vector<std::int32_t>& ranks) {
  std::vector<Symbol> alphabet(symbols.begin(), symbols.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  ranks.resize(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    ranks[i] = static_cast<std::int32_t>(
        std::lower_bound(alphabet.begin(), alphabet.end(), symbols[i]) - alphabet.begin());
  }
  return alphabet.size();
}

std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> ranks, std::int32_t upper) {
  if (ranks.size() > static_cast<std::size_t>(INT32_MAX / 2)) {
    throw InvalidInput("text too long for 32-bit suffix array");
  }
  if (ranks.empty()) return {};
  return sais(ranks, upper);
}

std::vector<std::int32_t> suffix_array(const Text& text) {
  std::vector<std::int32_t> ranks;
  const std::size_t sigma = rank_reduce(text.symbols(), ranks);
  return suffix_array(ranks, static_cast<std::int32_t>(sigma == 0 ? 0 : sigma - 1));
}

std::vector<std::int32_t> lcp_array(const Text& text, std::span<const std::int32_t> sa) {
  const std::size_t n = text.size();
  std::vector<std::int32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::int32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = static_cast<std::size_t>(sa[rank[i] - 1]);
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::int32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

std::vector<std::int32_t> naive_suffix_array(const Text& text) {
  std::vector<std::int32_t> sa(text.size());
  std::iota(sa.begin(), sa.end(), 0);
  auto sym = text.symbols();
  std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
    return std::lexicographical_compare(sym.begin() + a, sym.end(), sym.begin() + b, sym.end());
  });
  return sa;
}

}  // namespace deltakit

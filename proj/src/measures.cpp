#include "didx/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace didx {

std::vector<std::uint32_t> suffix_array(std::string_view s) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0u);
  for (std::uint32_t i = 0; i < n; ++i) rank[i] = static_cast<unsigned char>(s[i]);
  for (std::uint32_t len = 1;; len <<= 1) {
    auto key = [&](std::uint32_t i) {
      return std::pair<std::uint32_t, std::uint32_t>(
          rank[i], i + len < n ? rank[i + len] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (std::uint32_t i = 1; i < n; ++i)
      tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
    if (len >= n) break;
  }
  return sa;
}

std::vector<std::uint32_t> lcp_array(std::string_view s, const std::vector<std::uint32_t>& sa) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::uint32_t h = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    std::uint32_t j = sa[rank[i] - 1];
    if (h) --h;
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;  // lcp with the lexicographically previous suffix
  }
  return lcp;
}

ComplexityProfile substring_complexity(std::string_view s) {
  const std::uint64_t n = s.size();
  if (n == 0) throw std::invalid_argument("empty string");
  ComplexityProfile p;
  p.n = n;
  std::vector<char> present(256, 0);
  for (char c : s) present[static_cast<unsigned char>(c)] = 1;
  p.sigma_used = static_cast<std::uint32_t>(std::count(present.begin(), present.end(), 1));

  auto sa = suffix_array(s);
  auto lcp = lcp_array(s, sa);

  // d[k] = #suffixes of length >= k minus #positions whose lcp with the
  // previous suffix already covers k; ge[k] = #{i : lcp[i] >= k}
  std::vector<std::uint64_t> ge(n + 2, 0);
  for (std::uint64_t i = 1; i < n; ++i) ge[std::min<std::uint64_t>(lcp[i], n)] += 1;
  for (std::uint64_t k = n; k-- > 0;) ge[k] += ge[k + 1];

  p.d.resize(n);
  for (std::uint64_t k = 1; k <= n; ++k) p.d[k - 1] = (n - k + 1) - ge[k];

  p.delta = Fraction{1, 1};
  for (std::uint64_t k = 1; k <= n; ++k) {
    Fraction cand{p.d[k - 1], k};
    if (p.delta.less_than(cand)) p.delta = cand;
  }
  p.delta = p.delta.normalized();
  return p;
}

double delta_bound_term(std::uint64_t n, std::uint32_t sigma, const Fraction& delta) {
  const double d = delta.value();
  const double lg_sigma = std::log2(static_cast<double>(std::max<std::uint32_t>(sigma, 2)));
  const double lg_n = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2)));
  const double arg = static_cast<double>(n) * lg_sigma / (d * lg_n);
  return d * std::max(1.0, std::log2(arg));
}

std::pair<double, double> fact_sum_check(const ComplexityProfile& p) {
  double lhs = 0.0;
  for (std::uint64_t pw = 1, e = 0; pw <= p.n; pw <<= 1, ++e)
    lhs += static_cast<double>(p.d_at(pw)) / static_cast<double>(pw);
  const double d = p.delta.value();
  const double lg_sigma = std::log2(static_cast<double>(std::max<std::uint32_t>(p.sigma_used, 2)));
  const double lg_n = std::log2(static_cast<double>(std::max<std::uint64_t>(p.n, 2)));
  const double rhs = 5.0 * d + d * std::log2(static_cast<double>(p.n) * lg_sigma / (d * lg_n));
  return {lhs, rhs};
}

}  // namespace didx

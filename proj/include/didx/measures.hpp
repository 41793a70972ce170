#ifndef DIDX_MEASURES_HPP
#define DIDX_MEASURES_HPP

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "didx/common.hpp"

namespace didx {

struct ComplexityProfile {
  std::uint64_t n = 0;
  std::uint32_t sigma_used = 0;
  std::vector<std::uint64_t> d;  // d[k-1] = distinct length-k substrings, k in [1..n]
  Fraction delta;                // max_k d_k / k, exact

  std::uint64_t d_at(std::uint64_t k) const { return k >= 1 && k <= n ? d[k - 1] : (k == 0 ? 1 : 0); }
};

// Exact substring complexity via suffix array + LCP.
ComplexityProfile substring_complexity(std::string_view s);

// delta * max(1, log2(n*log2(sigma) / (delta*log2(n)))), the space-bound term
// with logs pinned to base 2.
double delta_bound_term(std::uint64_t n, std::uint32_t sigma, const Fraction& delta);

// lhs = sum over 2^p <= n of d_{2^p}/2^p; rhs = 5*delta + delta*log2 term.
// lhs <= rhs always holds; a violation signals an implementation bug.
std::pair<double, double> fact_sum_check(const ComplexityProfile& p);

std::vector<std::uint32_t> suffix_array(std::string_view s);
std::vector<std::uint32_t> lcp_array(std::string_view s, const std::vector<std::uint32_t>& sa);

}  // namespace didx

#endif

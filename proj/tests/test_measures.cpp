#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "didx/common.hpp"
#include "didx/corpus.hpp"
#include "didx/measures.hpp"

using namespace didx;

namespace {

std::vector<std::uint64_t> naive_d(const std::string& s) {
  std::vector<std::uint64_t> d(s.size());
  for (std::size_t k = 1; k <= s.size(); ++k) {
    std::set<std::string> sub;
    for (std::size_t i = 0; i + k <= s.size(); ++i) sub.insert(s.substr(i, k));
    d[k - 1] = sub.size();
  }
  return d;
}

}  // namespace

TEST_CASE("suffix and lcp arrays match direct sorting") {
  Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    std::string s(1 + rng.below(120), 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng.below(1 + rng.below(4)));

    const auto sa = suffix_array(s);
    std::vector<std::uint32_t> expect(s.size());
    for (std::uint32_t i = 0; i < s.size(); ++i) expect[i] = i;
    std::sort(expect.begin(), expect.end(), [&](std::uint32_t a, std::uint32_t b) {
      return s.substr(a) < s.substr(b);
    });
    REQUIRE(sa == expect);

    const auto lcp = lcp_array(s, sa);
    for (std::size_t i = 1; i < s.size(); ++i) {
      const std::string a = s.substr(sa[i - 1]), b = s.substr(sa[i]);
      std::size_t l = 0;
      while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
      CHECK(lcp[i] == l);
    }
  }
}

TEST_CASE("substring complexity equals the set-based oracle") {
  Rng rng(99);
  std::vector<std::string> cases = {"a", "ab", "aaaa", "abab", gen_fibonacci(10),
                                    gen_thue_morse(6)};
  for (int t = 0; t < 25; ++t) {
    std::string s(1 + rng.below(90), 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng.below(1 + rng.below(4)));
    cases.push_back(s);
  }
  for (const std::string& s : cases) {
    const ComplexityProfile p = substring_complexity(s);
    const auto expect = naive_d(s);
    REQUIRE(p.d == expect);
    // delta = max d_k/k as an exact fraction
    Fraction best{1, 1};
    for (std::size_t k = 1; k <= expect.size(); ++k) {
      Fraction cand{expect[k - 1], k};
      if (best.less_than(cand)) best = cand;
    }
    best = best.normalized();
    CHECK(p.delta.num == best.num);
    CHECK(p.delta.den == best.den);
  }
}

TEST_CASE("unary strings have delta = 1") {
  const ComplexityProfile p = substring_complexity(gen_unary(256));
  CHECK(p.delta.num == 1);
  CHECK(p.delta.den == 1);
  CHECK(p.sigma_used == 1);
  for (std::uint64_t dk : p.d) CHECK(dk == 1);
}

TEST_CASE("delta bound term and the partial-sum inequality") {
  for (const std::string& s :
       {gen_fibonacci(15), gen_thue_morse(10), gen_unary(512),
        gen_random(2048, 4, 3), gen_random(2048, 26, 4),
        gen_mutated_repeat(16, 64, 0.05, 5)}) {
    const ComplexityProfile p = substring_complexity(s);
    const double bt = delta_bound_term(p.n, p.sigma_used, p.delta);
    CHECK(bt >= p.delta.value());  // max(1, log) >= 1
    const auto [lhs, rhs] = fact_sum_check(p);
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(substring_complexity(""), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "didx/compressor.hpp"
#include "didx/corpus.hpp"
#include "didx/measures.hpp"
#include "didx/pattern_parser.hpp"

using namespace didx;

namespace {

CompressResult keep_build(const std::string& text, std::uint64_t seed) {
  const ComplexityProfile p = substring_complexity(text);
  CompressorConfig cc;
  cc.seed = seed;
  cc.delta = p.delta;
  cc.keep_levels = true;
  return compress(text, cc);
}

}  // namespace

TEST_CASE("parsing the text itself reproduces the stored level strings") {
  for (const std::string& text :
       {gen_fibonacci(13), gen_thue_morse(9), gen_random(800, 4, 21),
        gen_mutated_repeat(16, 50, 0.05, 22)}) {
    const CompressResult res = keep_build(text, 91);
    const RuleLookup lookup(res.grammar);
    const PatternParse pp =
        parse_pattern(text, res.grammar, lookup, res.perms, res.trace.level_count);
    CHECK_FALSE(pp.interior_foreign);
    REQUIRE(pp.level_count <= res.trace.level_count);
    for (std::uint32_t k = 0; k <= pp.level_count; ++k) {
      const auto& expect = res.trace.level_strings[k];
      const auto& got = pp.levels[k];
      REQUIRE(got.size() == expect.size());
      std::uint64_t off = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].sym == expect[i]);
        CHECK(got[i].off == off);
        off += res.grammar.exp_len[expect[i]];
        CHECK(got[i].len == res.grammar.exp_len[expect[i]]);
      }
    }
  }
}

TEST_CASE("single characters and absent characters") {
  const std::string text = gen_fibonacci(10);
  const CompressResult res = keep_build(text, 93);
  const RuleLookup lookup(res.grammar);

  const PatternParse one =
      parse_pattern("a", res.grammar, lookup, res.perms, res.trace.level_count);
  REQUIRE(one.levels[0].size() == 1);
  CHECK(one.levels[0][0].sym == 'a');
  CHECK_FALSE(one.interior_foreign);
  CHECK(candidate_cuts(one, CutMode::Mcut).cuts.empty());
  CHECK(candidate_cuts(one, CutMode::Exhaustive).cuts.empty());

  const PatternParse alien =
      parse_pattern("z", res.grammar, lookup, res.perms, res.trace.level_count);
  CHECK(alien.interior_foreign);  // 'z' is outside the text's byte range
}

TEST_CASE("cut sets: tiny patterns, containment, and the size ceiling") {
  const std::string text = gen_mutated_repeat(32, 120, 0.02, 23);
  const CompressResult res = keep_build(text, 95);
  const RuleLookup lookup(res.grammar);

  {
    const PatternParse two =
        parse_pattern(text.substr(10, 2), res.grammar, lookup, res.perms,
                      res.trace.level_count);
    CHECK(candidate_cuts(two, CutMode::Mcut).cuts == std::vector<std::uint64_t>{1});
    CHECK(candidate_cuts(two, CutMode::Exhaustive).cuts == std::vector<std::uint64_t>{1});
  }

  Rng rng(97);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t m = 2 + rng.below(std::min<std::uint64_t>(text.size(), 1u << 12) - 1);
    const std::uint64_t pos = rng.below(text.size() - m + 1);
    const std::string p = text.substr(pos, m);
    const PatternParse pp =
        parse_pattern(p, res.grammar, lookup, res.perms, res.trace.level_count);
    const CutSet mc = candidate_cuts(pp, CutMode::Mcut);
    const CutSet ex = candidate_cuts(pp, CutMode::Exhaustive);

    // mcut is contained in exhaustive = [1..m-1]
    CHECK(ex.cuts.size() == m - 1);
    for (std::uint64_t q : mc.cuts) {
      CHECK(q >= 1);
      CHECK(q <= m - 1);
    }
    CHECK(std::is_sorted(mc.cuts.begin(), mc.cuts.end()));
    CHECK(std::adjacent_find(mc.cuts.begin(), mc.cuts.end()) == mc.cuts.end());

    const double ceiling = 512.0 * std::ceil(std::log2(static_cast<double>(m) + 2.0));
    CHECK(static_cast<double>(mc.cuts.size()) <= ceiling);

    // total parse work stays linear in m
    std::uint64_t entries = 0;
    for (const auto& level : pp.levels) entries += level.size();
    CHECK(entries <= 40 * m + 16);
  }
}

TEST_CASE("patterns not in the text can become interior-foreign only if absent") {
  const std::string text = gen_random(2000, 4, 25);
  const CompressResult res = keep_build(text, 99);
  const RuleLookup lookup(res.grammar);
  Rng rng(101);
  for (int t = 0; t < 400; ++t) {
    const std::uint64_t m = 2 + rng.below(64);
    std::string p(m, 'a');
    for (auto& c : p) c = static_cast<char>('a' + rng.below(4));
    const PatternParse pp =
        parse_pattern(p, res.grammar, lookup, res.perms, res.trace.level_count);
    if (pp.interior_foreign) {
      // soundness of the early-rejection shortcut
      CHECK(naive_locate(text, p).empty());
    }
  }
}

TEST_CASE("planted patterns never trip the early-rejection flag") {
  for (const std::string& text :
       {gen_fibonacci(14), gen_random(3000, 3, 26), gen_mutated_repeat(24, 100, 0.04, 27)}) {
    const CompressResult res = keep_build(text, 103);
    const RuleLookup lookup(res.grammar);
    Rng rng(107);
    for (int t = 0; t < 300; ++t) {
      const std::uint64_t m = 1 + rng.below(std::min<std::uint64_t>(text.size(), 300));
      const std::uint64_t pos = rng.below(text.size() - m + 1);
      const PatternParse pp = parse_pattern(text.substr(pos, m), res.grammar, lookup,
                                            res.perms, res.trace.level_count);
      CHECK_FALSE(pp.interior_foreign);
    }
  }
}

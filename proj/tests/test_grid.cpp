#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "didx/compressor.hpp"
#include "didx/corpus.hpp"
#include "didx/grid.hpp"
#include "didx/measures.hpp"

using namespace didx;

namespace {

struct Built {
  CompressResult res;
  Extractor ex;
  GrammarTree tree;
  WeightTable weights;
  Grid grid;
};

Built build_all(const std::string& text, std::uint64_t seed) {
  const ComplexityProfile p = substring_complexity(text);
  CompressorConfig cc;
  cc.seed = seed;
  cc.delta = p.delta;
  Built b{compress(text, cc), {}, {}, {}, {}};
  b.ex = Extractor(b.res.grammar, seed);
  b.tree = build_grammar_tree(b.res.grammar);
  b.weights = symbol_weights(b.res.grammar, b.tree);
  b.grid = build_grid(b.res.grammar, b.weights, b.ex);
  return b;
}

std::string materialize(const AxisKey& k, const Extractor& ex) {
  return axis_prefix(k, k.len, ex);
}

}  // namespace

TEST_CASE("hand-checked grids: block pairs and run points") {
  // A -> B B, B -> ab over "abab"
  Rlslp g;
  g.sigma = 'b' + 1;
  g.exp_len.assign(g.sigma, 1);
  const SymbolId B = g.add_rule(Rule::block({'a', 'b'}));
  const SymbolId A = g.add_rule(Rule::block({B, B}));
  g.start = A;
  const Extractor ex(g, 5);
  const GrammarTree tree = build_grammar_tree(g);
  const WeightTable w = symbol_weights(g, tree);
  const Grid grid = build_grid(g, w, ex);

  REQUIRE(grid.points.size() == 2);  // ("a","b") under B and ("ab"^rev,"ab") under A
  for (const GridPoint& pt : grid.points) CHECK(pt.kind == Rule::Kind::Block);
  // locate the point under A: x string "ba" (reversed "ab"), y string "ab"
  bool found = false;
  for (const GridPoint& pt : grid.points)
    if (pt.parent == A) {
      found = true;
      CHECK(pt.border == 2);
      CHECK(materialize(grid.x_axis[pt.x_rank], ex) == "ba");
      CHECK(materialize(grid.y_axis[pt.y_rank], ex) == "ab");
      CHECK(pt.weight == 1);
    }
  CHECK(found);

  // A2 -> a^4: a single run point ("a", "aaa")
  Rlslp g2;
  g2.sigma = 'b' + 1;
  g2.exp_len.assign(g2.sigma, 1);
  g2.start = g2.add_rule(Rule::run('a', 4));
  const Extractor ex2(g2, 5);
  const GrammarTree tree2 = build_grammar_tree(g2);
  const Grid grid2 = build_grid(g2, symbol_weights(g2, tree2), ex2);
  REQUIRE(grid2.points.size() == 1);
  CHECK(grid2.points[0].kind == Rule::Kind::Run);
  CHECK(grid2.points[0].run_count == 4);
  CHECK(grid2.points[0].base_len == 1);
  CHECK(materialize(grid2.x_axis[grid2.points[0].x_rank], ex2) == "a");
  CHECK(materialize(grid2.y_axis[grid2.points[0].y_rank], ex2) == "aaa");
}

TEST_CASE("axes are sorted, deduplicated, and rank-consistent") {
  for (const std::string& text :
       {gen_fibonacci(13), gen_thue_morse(9), gen_random(1500, 4, 11), gen_unary(300),
        gen_mutated_repeat(24, 48, 0.04, 12)}) {
    const Built b = build_all(text, 71);
    CHECK(b.grid.points.size() <= b.res.grammar.grammar_size());

    for (const auto& axis : {b.grid.x_axis, b.grid.y_axis}) {
      for (std::size_t i = 1; i < axis.size(); ++i) {
        // full string comparison certifies the fingerprint-based sort
        CHECK(materialize(axis[i - 1], b.ex) < materialize(axis[i], b.ex));
      }
    }
    for (const GridPoint& pt : b.grid.points) {
      REQUIRE(pt.x_rank < b.grid.x_axis.size());
      REQUIRE(pt.y_rank < b.grid.y_axis.size());
      // the point's own axis strings equal the ranked entries
      const Rule& r = b.res.grammar.rule(pt.parent);
      const SymbolId left = r.kind == Rule::Kind::Run ? r.base : r.children[pt.child_index];
      std::string left_exp = b.res.grammar.expand(left);
      std::reverse(left_exp.begin(), left_exp.end());
      CHECK(materialize(b.grid.x_axis[pt.x_rank], b.ex) == left_exp);
      const std::string parent_exp = b.res.grammar.expand(pt.parent);
      CHECK(materialize(b.grid.y_axis[pt.y_rank], b.ex) == parent_exp.substr(pt.border));
    }
  }
}

TEST_CASE("prefix_range agrees with scanning the materialized axis") {
  const Built b = build_all(gen_mutated_repeat(16, 60, 0.06, 13), 73);
  std::vector<std::string> xs, ys;
  for (const AxisKey& k : b.grid.x_axis) xs.push_back(materialize(k, b.ex));
  for (const AxisKey& k : b.grid.y_axis) ys.push_back(materialize(k, b.ex));

  auto naive_range = [](const std::vector<std::string>& axis, const std::string& q) {
    RankRange r{0, 0};
    bool open = false;
    for (std::uint32_t i = 0; i < axis.size(); ++i) {
      if (axis[i].size() >= q.size() && axis[i].compare(0, q.size(), q) == 0) {
        if (!open) r.first = i, open = true;
        r.second = i + 1;
      }
    }
    if (!open) r = {0, 0};
    return r;
  };

  Rng rng(79);
  const std::string text = b.res.grammar.expand(b.res.grammar.start);
  for (int t = 0; t < 400; ++t) {
    std::string q;
    if (t % 4 == 0) {
      q = std::string(1 + rng.below(6), 'a');
      for (auto& c : q) c = static_cast<char>('a' + rng.below(5));
    } else {
      const std::uint64_t len = 1 + rng.below(12);
      const std::uint64_t pos = rng.below(text.size() - len + 1);
      q = text.substr(pos, len);
      if (t % 2) std::reverse(q.begin(), q.end());
    }
    const RankRange nx = naive_range(xs, q);
    const RankRange gx = b.grid.prefix_range_x(q, b.ex);
    if (nx.first < nx.second)
      CHECK(gx == nx);
    else
      CHECK(gx.first >= gx.second);
    const RankRange ny = naive_range(ys, q);
    const RankRange gy = b.grid.prefix_range_y(q, b.ex);
    if (ny.first < ny.second)
      CHECK(gy == ny);
    else
      CHECK(gy.first >= gy.second);
  }
  CHECK(b.grid.prefix_range_x("", b.ex) ==
        RankRange{0, static_cast<std::uint32_t>(xs.size())});
}

TEST_CASE("range_report and range_weight_sum match brute force") {
  for (const std::string& text :
       {gen_fibonacci(14), gen_random(2000, 3, 14), gen_mutated_repeat(20, 80, 0.03, 15)}) {
    const Built b = build_all(text, 83);
    const std::uint32_t nx = static_cast<std::uint32_t>(b.grid.x_axis.size());
    const std::uint32_t ny = static_cast<std::uint32_t>(b.grid.y_axis.size());
    Rng rng(89);
    for (int t = 0; t < 200; ++t) {
      RankRange xr{static_cast<std::uint32_t>(rng.below(nx + 1)), 0};
      xr.second = xr.first + static_cast<std::uint32_t>(rng.below(nx + 1 - xr.first));
      RankRange yr{static_cast<std::uint32_t>(rng.below(ny + 1)), 0};
      yr.second = yr.first + static_cast<std::uint32_t>(rng.below(ny + 1 - yr.first));

      std::vector<std::uint32_t> expect;
      std::uint64_t wsum = 0;
      std::vector<std::uint32_t> run_expect;
      for (std::uint32_t i = 0; i < b.grid.points.size(); ++i) {
        const GridPoint& pt = b.grid.points[i];
        if (pt.x_rank >= xr.first && pt.x_rank < xr.second && pt.y_rank >= yr.first &&
            pt.y_rank < yr.second) {
          expect.push_back(i);
          if (pt.kind == Rule::Kind::Block)
            wsum += pt.weight;
          else
            run_expect.push_back(i);
        }
      }
      CHECK(b.grid.range_report(xr, yr) == expect);
      CHECK(b.grid.range_weight_sum(xr, yr) == wsum);
      CHECK(b.grid.runs_in_range(xr, yr) == run_expect);
    }
    // full rectangle sanity
    const RankRange all_x{0, nx}, all_y{0, ny};
    CHECK(b.grid.range_report(all_x, all_y).size() == b.grid.points.size());
    CHECK(b.grid.range_report({0, 0}, all_y).empty());
  }
}

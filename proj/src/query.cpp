#include <algorithm>
#include <stdexcept>

#include "didx/index.hpp"
#include "didx/measures.hpp"

namespace didx {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::vector<OccurrenceSeed> Index::primary_seeds(std::string_view p, const CutSet& cuts) const {
  const std::uint64_t m = p.size();
  std::vector<OccurrenceSeed> seeds;
  std::string left_rev;
  for (std::uint64_t q : cuts.cuts) {
    left_rev.assign(p.rbegin() + (p.size() - q), p.rend());  // reverse(P[0..q))
    const RankRange xr = grid.prefix_range_x(left_rev, extractor);
    if (xr.first >= xr.second) continue;
    const RankRange yr = grid.prefix_range_y(p.substr(q), extractor);
    if (yr.first >= yr.second) continue;
    for (std::uint32_t idx : grid.range_report(xr, yr)) {
      const GridPoint& pt = grid.points[idx];
      ++stats.grid_points;
      if (pt.kind == Rule::Kind::Block) {
        seeds.push_back({pt.parent, pt.border - q});
      } else {
        // first crossed copy border picks the shift; the occurrence must
        // still fit inside exp(A_1)^s
        const std::uint64_t jmax = pt.run_count - 1 - ceil_div(m - q, pt.base_len);
        for (std::uint64_t j = 0; j <= jmax; ++j)
          seeds.push_back({pt.parent, pt.border + j * pt.base_len - q});
      }
    }
  }
  return seeds;
}

void Index::secondary_expand(const std::vector<OccurrenceSeed>& seeds,
                             std::vector<std::uint64_t>& out) const {
  std::vector<OccurrenceSeed> work(seeds);
  while (!work.empty()) {
    const OccurrenceSeed s = work.back();
    work.pop_back();
    if (s.sym == grammar.start) {
      out.push_back(s.offset + 1);  // 1-based
      continue;
    }
    const auto& link = tree.internal[s.sym];
    if (link.parent != kInvalidSymbol)
      work.push_back({link.parent, link.offset + s.offset});
    for (const LeafOccurrence& leaf : tree.leaf_occs[s.sym])
      for (std::uint64_t j = 0; j < leaf.copies; ++j)
        work.push_back({leaf.parent, leaf.offset + j * leaf.stride + s.offset});
  }
}

std::vector<std::uint64_t> Index::locate_single_char(std::uint8_t c) const {
  std::vector<std::uint64_t> out;
  if (c >= grammar.sigma) return out;
  secondary_expand({{c, 0}}, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> Index::locate(std::string_view p, const QueryOptions& opts) const {
  if (p.empty()) throw std::invalid_argument("empty pattern");
  ++stats.queries;
  if (p.size() == 1) return locate_single_char(static_cast<std::uint8_t>(p[0]));
  if (opts.use_trie && p.size() <= trie.max_len() && !trie.contains(p)) return {};

  const PatternParse parse = parse_pattern(p, grammar, *lookup, perms, level_count);
  if (opts.early_reject && parse.interior_foreign) return {};
  const CutSet cuts = candidate_cuts(parse, opts.cuts);
  stats.max_cut_count = std::max<std::uint64_t>(stats.max_cut_count, cuts.cuts.size());

  std::vector<std::uint64_t> out;
  secondary_expand(primary_seeds(p, cuts), out);
  std::sort(out.begin(), out.end());
  const auto uniq = std::unique(out.begin(), out.end());
  stats.duplicates += static_cast<std::uint64_t>(out.end() - uniq);  // safety net
  out.erase(uniq, out.end());
  return out;
}

std::uint64_t Index::count(std::string_view p, const QueryOptions& opts) const {
  if (p.empty()) throw std::invalid_argument("empty pattern");
  ++stats.queries;
  const std::uint64_t m = p.size();
  if (m == 1) {
    const std::uint8_t c = static_cast<std::uint8_t>(p[0]);
    return c < grammar.sigma ? weights[c] : 0;
  }
  if (opts.use_trie && m <= trie.max_len() && !trie.contains(p)) return 0;

  const PatternParse parse = parse_pattern(p, grammar, *lookup, perms, level_count);
  if (opts.early_reject && parse.interior_foreign) return 0;
  const CutSet cuts = candidate_cuts(parse, opts.cuts);
  stats.max_cut_count = std::max<std::uint64_t>(stats.max_cut_count, cuts.cuts.size());

  std::uint64_t total = 0;
  std::string left_rev;
  for (std::uint64_t q : cuts.cuts) {
    left_rev.assign(p.rbegin() + (p.size() - q), p.rend());
    const RankRange xr = grid.prefix_range_x(left_rev, extractor);
    if (xr.first >= xr.second) continue;
    const RankRange yr = grid.prefix_range_y(p.substr(q), extractor);
    if (yr.first >= yr.second) continue;
    total += grid.range_weight_sum(xr, yr);
    for (std::uint32_t idx : grid.runs_in_range(xr, yr)) {
      const GridPoint& pt = grid.points[idx];
      const std::uint64_t mult = pt.run_count - ceil_div(m - q, pt.base_len);
      total += pt.weight * mult;
    }
  }
  return total;
}

bool Index::exists(std::string_view p, const QueryOptions& opts) const {
  if (p.empty()) throw std::invalid_argument("empty pattern");
  if (opts.use_trie && p.size() <= trie.max_len()) return trie.contains(p);
  return count(p, opts) > 0;
}

void Index::finalize_derived() {
  tree = build_grammar_tree(grammar);
  weights = symbol_weights(grammar, tree);
  extractor = Extractor(grammar, seed);
  grid.finalize();
  lookup = std::make_unique<RuleLookup>(grammar);
}

Index build_index(std::string_view text, const IndexConfig& cfg) {
  if (text.empty()) throw std::invalid_argument("empty text");

  const ComplexityProfile profile = substring_complexity(text);

  CompressorConfig cc;
  cc.seed = cfg.seed;
  cc.cap_height = cfg.cap_height;
  cc.retries = cfg.retries;
  cc.delta = profile.delta;
  cc.bound_term = delta_bound_term(profile.n, profile.sigma_used, profile.delta);
  CompressResult res = compress(text, cc);

  Index ix;
  ix.grammar = std::move(res.grammar);
  ix.perms = std::move(res.perms);
  ix.level_count = res.trace.level_count;
  ix.seed = cfg.seed;
  ix.capped = cfg.cap_height;
  ix.retry_warning = res.trace.retry_warning;
  ix.attempts = res.trace.attempts;
  ix.delta = profile.delta;
  ix.sigma_used = profile.sigma_used;
  ix.bound_term = cc.bound_term;

  ix.tree = build_grammar_tree(ix.grammar);
  ix.weights = symbol_weights(ix.grammar, ix.tree);
  ix.extractor = Extractor(ix.grammar, ix.seed);
  ix.grid = build_grid(ix.grammar, ix.weights, ix.extractor);
  ix.lookup = std::make_unique<RuleLookup>(ix.grammar);

  std::uint32_t trie_len = cfg.trie_len;
  if (trie_len == 0) {
    std::uint64_t g = ix.grammar.grammar_size();
    trie_len = 1;
    while ((1ull << trie_len) < g) ++trie_len;  // ceil(log2 g)
  }
  ix.trie = ShortTrie(text, trie_len);
  return ix;
}

}  // namespace didx

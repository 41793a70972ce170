#include "didx/pattern_parser.hpp"

#include <algorithm>

#include "didx/exact.hpp"

namespace didx {

namespace {

std::string run_key(SymbolId base, std::uint64_t count) {
  std::string key(1, 'R');
  key.append(reinterpret_cast<const char*>(&base), sizeof(base));
  key.append(reinterpret_cast<const char*>(&count), sizeof(count));
  return key;
}

std::string block_key(const std::vector<SymbolId>& children) {
  std::string key(1, 'B');
  key.append(reinterpret_cast<const char*>(children.data()),
             children.size() * sizeof(SymbolId));
  return key;
}

}  // namespace

RuleLookup::RuleLookup(const Rlslp& g) {
  by_content_.reserve(g.rules.size());
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const Rule& r = g.rules[i];
    const SymbolId id = g.sigma + static_cast<SymbolId>(i);
    by_content_.emplace(r.kind == Rule::Kind::Run ? run_key(r.base, r.count)
                                                  : block_key(r.children),
                        id);
  }
}

SymbolId RuleLookup::find_run(SymbolId base, std::uint64_t count) const {
  auto it = by_content_.find(run_key(base, count));
  return it == by_content_.end() ? kInvalidSymbol : it->second;
}

SymbolId RuleLookup::find_block(const std::vector<SymbolId>& children) const {
  auto it = by_content_.find(block_key(children));
  return it == by_content_.end() ? kInvalidSymbol : it->second;
}

PatternParse parse_pattern(std::string_view p, const Rlslp& g, const RuleLookup& lookup,
                           const PermTable& perms, std::uint32_t text_levels) {
  PatternParse pp;
  pp.m = p.size();
  const std::uint64_t sat = pp.m + 2;  // lengths beyond m all behave alike

  std::vector<ParseEntry> cur;
  cur.reserve(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) {
    const SymbolId c = static_cast<unsigned char>(p[i]);
    cur.push_back({c < g.sigma ? c : kInvalidSymbol, i, 1});
    // a character outside the text's alphabet rules out every occurrence
    if (c >= g.sigma) pp.interior_foreign = true;
  }
  pp.levels.push_back(cur);

  std::uint32_t k = 0;
  while (k < text_levels) {
    // edge windows of the next levels already cover the whole pattern: the
    // remaining levels cannot contribute new interior cuts
    if (2 * exact::alpha_floor(exact::level_exponent(k + 1), sat) >= pp.m) break;
    ++k;
    const std::uint64_t ell = exact::ell_floor(exact::level_exponent(k), sat);
    auto active = [ell](const ParseEntry& e) { return !e.foreign() && e.len <= ell; };

    std::vector<ParseEntry> next;
    next.reserve(cur.size());
    if (k % 2 == 1) {  // run-length step
      std::size_t i = 0;
      while (i < cur.size()) {
        if (!active(cur[i])) {
          next.push_back(cur[i]);
          ++i;
          continue;
        }
        std::size_t j = i + 1;
        while (j < cur.size() && active(cur[j]) && cur[j].sym == cur[i].sym) ++j;
        const std::uint64_t cnt = j - i;
        if (cnt >= 2) {
          next.push_back({lookup.find_run(cur[i].sym, cnt), cur[i].off, cnt * cur[i].len});
        } else {
          next.push_back(cur[i]);
        }
        i = j;
      }
    } else {  // block step with the stored permutation; missing ranks are 0
      const std::size_t n = cur.size();
      std::vector<std::uint32_t> r(n);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = cur[i].foreign() ? 0 : perms.rank(k, cur[i].sym);
      std::size_t i = 0;
      std::vector<SymbolId> children;
      while (i < n) {
        std::size_t q = i;
        while (q + 1 < n) {
          const bool boundary = r[q] == 0 || r[q + 1] == 0 ||
                                (q >= 1 && r[q - 1] > r[q] && r[q] < r[q + 1]);
          if (boundary) break;
          ++q;
        }
        if (q == i) {
          next.push_back(cur[i]);
        } else {
          children.clear();
          bool known = true;
          std::uint64_t len = 0;
          for (std::size_t t = i; t <= q; ++t) {
            known = known && !cur[t].foreign();
            if (known) children.push_back(cur[t].sym);
            len += cur[t].len;
          }
          next.push_back({known ? lookup.find_block(children) : kInvalidSymbol,
                          cur[i].off, len});
        }
        i = q + 1;
      }
    }
    cur.swap(next);
    pp.levels.push_back(cur);

    // a Foreign block far from both pattern edges contradicts any occurrence
    const std::uint64_t a = exact::alpha_floor(exact::level_exponent(k + 1), sat);
    for (const ParseEntry& e : cur)
      if (e.foreign() && e.off > 2 * a + 1 && e.off + e.len + 2 * a + 1 < pp.m)
        pp.interior_foreign = true;
  }
  pp.level_count = k;
  return pp;
}

CutSet candidate_cuts(const PatternParse& parse, CutMode mode) {
  CutSet cs;
  cs.mode = mode;
  const std::uint64_t m = parse.m;
  if (m < 2) return cs;
  if (mode == CutMode::Exhaustive) {
    cs.cuts.resize(m - 1);
    for (std::uint64_t q = 1; q < m; ++q) cs.cuts[q - 1] = q;
    return cs;
  }

  const std::uint64_t sat = m + 2;
  std::vector<std::uint64_t> cuts;
  for (std::uint32_t k = 0; k <= parse.level_count; ++k) {
    const std::uint64_t a = exact::alpha_floor(exact::level_exponent(k + 1), sat);
    const bool last = k == parse.level_count;
    std::uint64_t leftmost_interior = 0;
    const auto& level = parse.levels[k];
    for (std::size_t i = 1; i < level.size(); ++i) {
      const std::uint64_t b = level[i].off;  // boundary = left piece length
      const bool left_win = b <= 2 * a;
      const bool right_win = b + a + 1 >= m;
      if (last || left_win || right_win) {
        cuts.push_back(b);
      } else if (leftmost_interior == 0) {
        leftmost_interior = b;
      }
    }
    if (leftmost_interior != 0) cuts.push_back(leftmost_interior);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::uint64_t b : cuts)
    if (b >= 1 && b <= m - 1) cs.cuts.push_back(b);
  return cs;
}

}  // namespace didx

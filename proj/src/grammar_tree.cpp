#include "didx/grammar_tree.hpp"

#include <algorithm>
#include <cassert>

namespace didx {

namespace {

struct TreeBuilder {
  const Rlslp& g;
  GrammarTree& t;
  std::vector<char> seen;

  void add_leaf(SymbolId label, SymbolId parent, std::uint64_t off,
                std::uint64_t abs, std::uint64_t copies, std::uint64_t stride) {
    t.leaf_occs[label].push_back({parent, off, copies, stride});
    std::uint64_t len = copies > 1 ? copies * stride : g.exp_len[label];
    t.phrases.push_back({abs + off + len, label, copies});
  }

  // A is a nonterminal whose internal node starts at absolute offset abs
  void visit(SymbolId a, std::uint64_t abs) {
    const Rule& r = g.rule(a);
    if (r.kind == Rule::Kind::Block) {
      std::uint64_t off = 0;
      for (SymbolId c : r.children) {
        ++t.node_count;
        if (!g.is_terminal(c) && !seen[c]) {
          seen[c] = 1;
          t.internal[c] = {a, off};
          visit(c, abs + off);
        } else {
          add_leaf(c, a, off, abs, 1, 0);
        }
        off += g.exp_len[c];
      }
    } else {
      t.node_count += 2;
      const std::uint64_t base_len = g.exp_len[r.base];
      if (!g.is_terminal(r.base) && !seen[r.base]) {
        seen[r.base] = 1;
        t.internal[r.base] = {a, 0};
        visit(r.base, abs);
      } else {
        add_leaf(r.base, a, 0, abs, 1, 0);
      }
      add_leaf(r.base, a, base_len, abs, r.count - 1, base_len);
    }
  }
};

}  // namespace

GrammarTree build_grammar_tree(const Rlslp& g) {
  GrammarTree t;
  const std::size_t n_syms = g.num_symbols();
  t.internal.assign(n_syms, {});
  t.leaf_occs.assign(n_syms, {});
  t.node_count = 1;  // root

  if (g.is_terminal(g.start)) {
    t.phrases.push_back({1, g.start, 1});
    return t;
  }
  TreeBuilder b{g, t, std::vector<char>(n_syms, 0)};
  b.seen[g.start] = 1;
  b.visit(g.start, 0);
  assert(!t.phrases.empty() && t.phrases.back().end == g.text_len());
  return t;
}

std::size_t GrammarTree::phrase_at(std::uint64_t pos) const {
  auto it = std::lower_bound(phrases.begin(), phrases.end(), pos,
                             [](const Phrase& p, std::uint64_t v) { return p.end < v; });
  return static_cast<std::size_t>(it - phrases.begin());
}

WeightTable symbol_weights(const Rlslp& g, const GrammarTree&) {
  WeightTable w(g.num_symbols(), 0);
  w[g.start] = 1;
  for (std::size_t i = g.rules.size(); i-- > 0;) {
    const SymbolId id = g.sigma + static_cast<SymbolId>(i);
    const Rule& r = g.rules[i];
    if (w[id] == 0) continue;
    if (r.kind == Rule::Kind::Block) {
      for (SymbolId c : r.children) w[c] += w[id];
    } else {
      w[r.base] += r.count * w[id];
    }
  }
  return w;
}

}  // namespace didx

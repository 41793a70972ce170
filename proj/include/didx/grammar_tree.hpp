#ifndef DIDX_GRAMMAR_TREE_HPP
#define DIDX_GRAMMAR_TREE_HPP

#include <cstdint>
#include <vector>

#include "didx/rlslp.hpp"

namespace didx {

// One grammar-tree leaf labeled with some symbol. A run remainder A_1^[s-1]
// is a single leaf carrying copies = s-1 spaced by stride = |exp(A_1)|.
struct LeafOccurrence {
  SymbolId parent = kInvalidSymbol;
  std::uint64_t offset = 0;  // of the first copy within exp(parent)
  std::uint64_t copies = 1;
  std::uint64_t stride = 0;

  bool operator==(const LeafOccurrence&) const = default;
};

// Parse tree with every non-leftmost nonterminal occurrence pruned to a leaf.
// Run rules A -> A_1^s appear as A -> A_1 A_1^[s-1].
class GrammarTree {
 public:
  struct InternalLink {
    SymbolId parent = kInvalidSymbol;  // kInvalidSymbol marks the root
    std::uint64_t offset = 0;
  };

  struct Phrase {
    std::uint64_t end = 0;  // 1-based end position in S
    SymbolId symbol = kInvalidSymbol;
    std::uint64_t copies = 1;  // > 1 for run remainder leaves
  };

  std::vector<InternalLink> internal;               // per symbol
  std::vector<std::vector<LeafOccurrence>> leaf_occs;  // per symbol
  std::vector<Phrase> phrases;                      // leaves in text order
  std::uint64_t node_count = 0;

  // index of the phrase covering 1-based text position pos
  std::size_t phrase_at(std::uint64_t pos) const;

  std::uint64_t phrase_count() const { return phrases.size(); }
};

GrammarTree build_grammar_tree(const Rlslp& g);

// w(A): number of parse-tree nodes labeled A. w(start) = 1; terminal weights
// sum to n. These are the per-point counts the grid stores.
using WeightTable = std::vector<std::uint64_t>;

WeightTable symbol_weights(const Rlslp& g, const GrammarTree& tree);

}  // namespace didx

#endif

#ifndef DIDX_INDEX_HPP
#define DIDX_INDEX_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "didx/common.hpp"
#include "didx/compressor.hpp"
#include "didx/extraction.hpp"
#include "didx/grammar_tree.hpp"
#include "didx/grid.hpp"
#include "didx/pattern_parser.hpp"
#include "didx/rlslp.hpp"
#include "didx/short_trie.hpp"

namespace didx {

struct IndexConfig {
  std::uint64_t seed = 0;
  bool cap_height = true;
  std::uint32_t retries = 5;
  std::uint32_t trie_len = 0;  // 0 = ceil(log2 g)
};

struct QueryOptions {
  CutMode cuts = CutMode::Mcut;
  bool use_trie = true;
  bool early_reject = true;
};

// telemetry accumulated across queries; duplicates must stay 0
struct QueryStats {
  std::uint64_t duplicates = 0;
  std::uint64_t queries = 0;
  std::uint64_t max_cut_count = 0;
  std::uint64_t grid_points = 0;
};

struct OccurrenceSeed {
  SymbolId sym = kInvalidSymbol;
  std::uint64_t offset = 0;  // 0-based within exp(sym)
};

class Index {
 public:
  // serialized state
  Rlslp grammar;
  PermTable perms;
  std::uint32_t level_count = 0;
  std::uint64_t seed = 0;
  bool capped = true;
  bool retry_warning = false;
  std::uint32_t attempts = 1;
  Fraction delta{1, 1};
  std::uint32_t sigma_used = 0;
  double bound_term = 0.0;
  ShortTrie trie;
  Grid grid;

  // derived at build/load time
  GrammarTree tree;
  WeightTable weights;
  Extractor extractor;
  std::unique_ptr<RuleLookup> lookup;

  mutable QueryStats stats;

  std::uint64_t text_len() const { return grammar.text_len(); }

  std::vector<std::uint64_t> locate(std::string_view p, const QueryOptions& opts = {}) const;
  std::uint64_t count(std::string_view p, const QueryOptions& opts = {}) const;
  bool exists(std::string_view p, const QueryOptions& opts = {}) const;

  // primary seeds for the given cuts; exposed for tests
  std::vector<OccurrenceSeed> primary_seeds(std::string_view p, const CutSet& cuts) const;

  // copy propagation to absolute 1-based positions
  void secondary_expand(const std::vector<OccurrenceSeed>& seeds,
                        std::vector<std::uint64_t>& out) const;

  std::vector<std::uint64_t> locate_single_char(std::uint8_t c) const;

  // rebuilds tree/weights/extractor/grid structures/lookup from the
  // serialized state; must be called after deserialization
  void finalize_derived();
};

Index build_index(std::string_view text, const IndexConfig& cfg = {});

// IndexBundle v1 ("DIDX"): little-endian sectioned container
void save_index(const Index& ix, std::ostream& out);
Index load_index(std::istream& in);
void save_index_file(const Index& ix, const std::string& path);
Index load_index_file(const std::string& path);

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace didx

#endif

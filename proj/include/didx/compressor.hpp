#ifndef DIDX_COMPRESSOR_HPP
#define DIDX_COMPRESSOR_HPP

#include <cstdint>
#include <functional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "didx/common.hpp"
#include "didx/rlslp.hpp"

namespace didx {

// Ranks of the random orderings used at block-parsing levels, kept only for
// the symbols that were active there. Missing symbols rank 0, which is how
// pattern parsing treats paused symbols as well.
class PermTable {
 public:
  std::vector<std::unordered_map<SymbolId, std::uint32_t>> levels;

  std::uint32_t rank(std::uint32_t level, SymbolId a) const {
    if (level >= levels.size()) return 0;
    auto it = levels[level].find(a);
    return it == levels[level].end() ? 0 : it->second;
  }
};

struct CompressorConfig {
  std::uint64_t seed = 0;
  bool cap_height = true;      // stop after lambda levels and wrap with a block rule
  std::uint32_t retries = 5;   // total attempts with fresh randomness
  double size_threshold = 16.0;  // accept when g <= size_threshold * bound_term
  double bound_term = 0.0;       // 0 disables the retry loop
  Fraction delta{1, 1};          // needed for the level cap
  bool keep_levels = false;      // retain level strings for property checks
};

struct LevelTrace {
  std::vector<std::uint64_t> level_sizes;            // |S_k| for k in [0..level_count]
  std::vector<std::vector<SymbolId>> level_strings;  // only with keep_levels
  std::uint32_t level_count = 0;
  std::uint64_t kappa = 0;
  std::uint64_t lambda = 0;
  bool capped = false;
  bool retry_warning = false;  // retry budget exhausted above threshold
  std::uint32_t attempts = 1;
  std::uint64_t seed_used = 0;
};

struct CompressResult {
  Rlslp grammar;
  PermTable perms;
  LevelTrace trace;
};

// Deduplicates rules by content: one symbol per distinct block or run body.
class GrammarBuilder {
 public:
  explicit GrammarBuilder(std::uint32_t sigma);

  SymbolId run_symbol(SymbolId base, std::uint64_t count);
  SymbolId block_symbol(const std::vector<SymbolId>& children);

  Rlslp& grammar() { return g_; }
  const Rlslp& grammar() const { return g_; }

 private:
  Rlslp g_;
  std::unordered_map<std::string, SymbolId> by_content_;
};

using ActiveFn = std::function<bool(SymbolId)>;

// One run-length level: maximal runs of >= 2 equal active symbols collapse.
std::vector<SymbolId> rle_level(const std::vector<SymbolId>& t, const ActiveFn& active,
                                GrammarBuilder& builder);

// One block-parsing level with boundaries at paused symbols and local minima
// of `rank` (0 = paused).
std::vector<SymbolId> bc_level(const std::vector<SymbolId>& t,
                               const std::function<std::uint32_t(SymbolId)>& rank,
                               GrammarBuilder& builder);

// Uniformly random bijection onto [1..|symbols|] with every paused symbol
// ranked below every active one.
std::unordered_map<SymbolId, std::uint32_t> sample_permutation(
    const std::vector<SymbolId>& symbols, const ActiveFn& active, Rng& rng);

CompressResult compress(std::string_view text, const CompressorConfig& cfg);

// B_k for a build that retained its level strings.
std::vector<std::uint64_t> phrase_boundaries(const LevelTrace& trace, const Rlslp& g,
                                             std::uint32_t k);

}  // namespace didx

#endif

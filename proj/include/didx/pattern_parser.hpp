#ifndef DIDX_PATTERN_PARSER_HPP
#define DIDX_PATTERN_PARSER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "didx/compressor.hpp"
#include "didx/rlslp.hpp"

namespace didx {

// Content-addressed rule lookup so a pattern block that matches an existing
// rule resolves to the same symbol the text parse produced.
class RuleLookup {
 public:
  explicit RuleLookup(const Rlslp& g);

  SymbolId find_run(SymbolId base, std::uint64_t count) const;
  SymbolId find_block(const std::vector<SymbolId>& children) const;  // kInvalidSymbol if absent

 private:
  std::unordered_map<std::string, SymbolId> by_content_;
};

// One entry of a pattern level string: a grammar symbol or a Foreign block
// (content with no grammar rule, permanently paused).
struct ParseEntry {
  SymbolId sym = kInvalidSymbol;  // kInvalidSymbol marks Foreign
  std::uint64_t off = 0;          // 0-based start within P
  std::uint64_t len = 0;

  bool foreign() const { return sym == kInvalidSymbol; }
};

struct PatternParse {
  std::uint64_t m = 0;
  std::uint32_t level_count = 0;                 // levels actually parsed (h)
  std::vector<std::vector<ParseEntry>> levels;   // [0..level_count]
  bool interior_foreign = false;  // a Foreign block deep inside the pattern
};

enum class CutMode { Mcut, Exhaustive };

struct CutSet {
  std::vector<std::uint64_t> cuts;  // sorted, within [1..m-1]
  CutMode mode = CutMode::Mcut;
};

// Re-parse P with the stored permutations, stopping once the per-level edge
// windows cover the whole pattern (or at the text's level count).
PatternParse parse_pattern(std::string_view p, const Rlslp& g, const RuleLookup& lookup,
                           const PermTable& perms, std::uint32_t text_levels);

CutSet candidate_cuts(const PatternParse& parse, CutMode mode);

}  // namespace didx

#endif

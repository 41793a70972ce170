#ifndef DIDX_RLSLP_HPP
#define DIDX_RLSLP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "didx/common.hpp"

namespace didx {

// A rule is either a block A -> A_1 ... A_s (s >= 2) or a run A -> A_1^s
// (s >= 2). Children always have smaller ids than the symbol they define,
// which makes the grammar acyclic by construction.
struct Rule {
  enum class Kind : std::uint8_t { Block, Run };

  Kind kind = Kind::Block;
  std::vector<SymbolId> children;  // Block
  SymbolId base = 0;               // Run
  std::uint64_t count = 0;         // Run multiplicity

  static Rule block(std::vector<SymbolId> ch) {
    Rule r;
    r.kind = Kind::Block;
    r.children = std::move(ch);
    return r;
  }
  static Rule run(SymbolId base, std::uint64_t count) {
    Rule r;
    r.kind = Kind::Run;
    r.base = base;
    r.count = count;
    return r;
  }

  bool operator==(const Rule&) const = default;
};

// Run-length straight-line program. Terminals occupy ids [0..sigma);
// nonterminal sigma+i is defined by rules[i].
class Rlslp {
 public:
  std::uint32_t sigma = 0;
  std::vector<Rule> rules;
  SymbolId start = 0;
  std::vector<std::uint64_t> exp_len;  // per symbol, terminals included

  std::size_t num_symbols() const { return sigma + rules.size(); }
  bool is_terminal(SymbolId a) const { return a < sigma; }
  const Rule& rule(SymbolId a) const { return rules[a - sigma]; }
  std::uint64_t text_len() const { return exp_len.empty() ? 0 : exp_len[start]; }

  // total size: block arities plus 2 per run rule
  std::uint64_t grammar_size() const;

  // appends a rule for symbol sigma+rules.size(); computes exp_len
  SymbolId add_rule(Rule r);

  std::uint64_t expansion_length(SymbolId a) const;  // throws on bad id
  std::string expand(SymbolId a) const;              // desk-scale only

  // structural checks: id ordering, arities, exp_len consistency
  std::vector<std::string> validate() const;
};

// Verifies that for every run rule A -> A_1^s the shortest period of exp(A)
// equals |exp(A_1)|, via a failure-function scan. Returns violations.
std::vector<std::string> check_runlength_periods(const Rlslp& g);

// shortest period of a string (failure function)
std::uint64_t shortest_period(const std::string& s);

}  // namespace didx

#endif

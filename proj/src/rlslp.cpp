#include "didx/rlslp.hpp"

#include <stdexcept>

namespace didx {

std::uint64_t Rlslp::grammar_size() const {
  std::uint64_t g = 0;
  for (const Rule& r : rules)
    g += r.kind == Rule::Kind::Block ? r.children.size() : 2;
  return g;
}

SymbolId Rlslp::add_rule(Rule r) {
  if (exp_len.size() < sigma) exp_len.resize(sigma, 1);
  std::uint64_t len = 0;
  if (r.kind == Rule::Kind::Block) {
    for (SymbolId c : r.children) len += exp_len[c];
  } else {
    len = r.count * exp_len[r.base];
  }
  SymbolId id = static_cast<SymbolId>(num_symbols());
  rules.push_back(std::move(r));
  exp_len.push_back(len);
  return id;
}

std::uint64_t Rlslp::expansion_length(SymbolId a) const {
  if (a >= num_symbols()) throw std::invalid_argument("unknown symbol id");
  return exp_len[a];
}

std::string Rlslp::expand(SymbolId a) const {
  if (a >= num_symbols()) throw std::invalid_argument("unknown symbol id");
  std::string out;
  out.reserve(exp_len[a]);
  std::vector<SymbolId> stack{a};
  while (!stack.empty()) {
    SymbolId s = stack.back();
    stack.pop_back();
    if (is_terminal(s)) {
      out.push_back(static_cast<char>(s));
      continue;
    }
    const Rule& r = rule(s);
    if (r.kind == Rule::Kind::Block) {
      for (auto it = r.children.rbegin(); it != r.children.rend(); ++it)
        stack.push_back(*it);
    } else {
      for (std::uint64_t i = 0; i < r.count; ++i) stack.push_back(r.base);
    }
  }
  return out;
}

std::vector<std::string> Rlslp::validate() const {
  std::vector<std::string> bad;
  if (exp_len.size() != num_symbols()) {
    bad.push_back("exp_len table size mismatch");
    return bad;
  }
  for (std::uint32_t t = 0; t < sigma; ++t)
    if (exp_len[t] != 1) bad.push_back("terminal " + std::to_string(t) + " exp_len != 1");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const SymbolId id = sigma + static_cast<SymbolId>(i);
    const Rule& r = rules[i];
    if (r.kind == Rule::Kind::Block) {
      if (r.children.size() < 2)
        bad.push_back("block rule " + std::to_string(id) + " arity < 2");
      std::uint64_t len = 0;
      for (SymbolId c : r.children) {
        if (c >= id) {
          bad.push_back("rule " + std::to_string(id) + " child id not smaller");
          len = exp_len[id];  // suppress the length complaint below
          break;
        }
        len += exp_len[c];
      }
      if (len != exp_len[id])
        bad.push_back("rule " + std::to_string(id) + " exp_len mismatch");
    } else {
      if (r.count < 2)
        bad.push_back("run rule " + std::to_string(id) + " multiplicity < 2");
      if (r.base >= id) {
        bad.push_back("rule " + std::to_string(id) + " base id not smaller");
      } else if (r.count * exp_len[r.base] != exp_len[id]) {
        bad.push_back("rule " + std::to_string(id) + " exp_len mismatch");
      }
    }
  }
  if (start >= num_symbols()) bad.push_back("start symbol out of range");
  return bad;
}

std::uint64_t shortest_period(const std::string& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> fail(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  return n - fail[n];
}

std::vector<std::string> check_runlength_periods(const Rlslp& g) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const Rule& r = g.rules[i];
    if (r.kind != Rule::Kind::Run) continue;
    const SymbolId id = g.sigma + static_cast<SymbolId>(i);
    std::uint64_t p = shortest_period(g.expand(id));
    if (p != g.exp_len[r.base])
      bad.push_back("run rule " + std::to_string(id) + ": shortest period " +
                    std::to_string(p) + " != base length " +
                    std::to_string(g.exp_len[r.base]));
  }
  return bad;
}

}  // namespace didx

#include "didx/compressor.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "didx/exact.hpp"

namespace didx {

GrammarBuilder::GrammarBuilder(std::uint32_t sigma) {
  g_.sigma = sigma;
  g_.exp_len.assign(sigma, 1);
}

SymbolId GrammarBuilder::run_symbol(SymbolId base, std::uint64_t count) {
  std::string key(1, 'R');
  key.append(reinterpret_cast<const char*>(&base), sizeof(base));
  key.append(reinterpret_cast<const char*>(&count), sizeof(count));
  auto it = by_content_.find(key);
  if (it != by_content_.end()) return it->second;
  SymbolId id = g_.add_rule(Rule::run(base, count));
  by_content_.emplace(std::move(key), id);
  return id;
}

SymbolId GrammarBuilder::block_symbol(const std::vector<SymbolId>& children) {
  std::string key(1, 'B');
  key.append(reinterpret_cast<const char*>(children.data()),
             children.size() * sizeof(SymbolId));
  auto it = by_content_.find(key);
  if (it != by_content_.end()) return it->second;
  SymbolId id = g_.add_rule(Rule::block(children));
  by_content_.emplace(std::move(key), id);
  return id;
}

std::vector<SymbolId> rle_level(const std::vector<SymbolId>& t, const ActiveFn& active,
                                GrammarBuilder& builder) {
  std::vector<SymbolId> out;
  out.reserve(t.size());
  std::size_t i = 0;
  while (i < t.size()) {
    if (!active(t[i])) {
      out.push_back(t[i]);
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < t.size() && t[j] == t[i] && active(t[j])) ++j;
    const std::uint64_t m = j - i;
    out.push_back(m >= 2 ? builder.run_symbol(t[i], m) : t[i]);
    i = j;
  }
  return out;
}

std::vector<SymbolId> bc_level(const std::vector<SymbolId>& t,
                               const std::function<std::uint32_t(SymbolId)>& rank,
                               GrammarBuilder& builder) {
  const std::size_t n = t.size();
  std::vector<std::uint32_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = rank(t[i]);

  std::vector<SymbolId> out;
  out.reserve(n);
  std::vector<SymbolId> block;
  std::size_t i = 0;
  while (i < n) {
    block.clear();
    block.push_back(t[i]);
    std::size_t p = i;
    // extend while there is no boundary between p and p+1
    while (p + 1 < n) {
      bool boundary = r[p] == 0 || r[p + 1] == 0 ||
                      (p >= 1 && r[p - 1] > r[p] && r[p] < r[p + 1]);
      if (boundary) break;
      block.push_back(t[p + 1]);
      ++p;
    }
    out.push_back(block.size() >= 2 ? builder.block_symbol(block) : block[0]);
    i = p + 1;
  }
  return out;
}

std::unordered_map<SymbolId, std::uint32_t> sample_permutation(
    const std::vector<SymbolId>& symbols, const ActiveFn& active, Rng& rng) {
  std::vector<SymbolId> paused, act;
  for (SymbolId s : symbols) (active(s) ? act : paused).push_back(s);
  rng.shuffle(paused);
  rng.shuffle(act);
  std::unordered_map<SymbolId, std::uint32_t> pi;
  pi.reserve(symbols.size());
  std::uint32_t next = 1;
  for (SymbolId s : paused) pi[s] = next++;
  for (SymbolId s : act) pi[s] = next++;
  return pi;
}

namespace {

CompressResult compress_once(std::string_view text, const CompressorConfig& cfg,
                             std::uint64_t seed) {
  const std::uint64_t n = text.size();
  std::uint32_t sigma = 0;
  for (char c : text) sigma = std::max<std::uint32_t>(sigma, static_cast<unsigned char>(c) + 1);

  CompressResult res;
  res.trace.kappa = 2ull * exact::log43_ceil(4 * n);
  res.trace.lambda = 2ull * exact::log43_floor_ratio(n, cfg.delta.num, cfg.delta.den);
  res.trace.capped = cfg.cap_height;
  res.trace.seed_used = seed;

  GrammarBuilder builder(sigma);
  Rlslp& g = builder.grammar();

  std::vector<SymbolId> cur(n);
  for (std::uint64_t i = 0; i < n; ++i) cur[i] = static_cast<unsigned char>(text[i]);

  res.trace.level_sizes.push_back(cur.size());
  if (cfg.keep_levels) res.trace.level_strings.push_back(cur);

  Rng rng(seed, /*stream=*/1);
  const std::uint64_t max_levels = cfg.cap_height
                                       ? std::min(res.trace.lambda, res.trace.kappa + 2)
                                       : res.trace.kappa + 2;

  std::uint32_t k = 0;
  while (cur.size() > 1 && k < max_levels) {
    ++k;
    const std::uint32_t e = exact::level_exponent(k);
    const std::uint64_t ell = exact::ell_floor(e, n + 1);
    ActiveFn active = [&g, ell](SymbolId a) { return g.exp_len[a] <= ell; };

    if (k % 2 == 1) {
      cur = rle_level(cur, active, builder);
    } else {
      std::vector<SymbolId> alphabet(cur);
      std::sort(alphabet.begin(), alphabet.end());
      alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
      auto pi = sample_permutation(alphabet, active, rng);
      if (res.perms.levels.size() <= k) res.perms.levels.resize(k + 1);
      for (auto [sym, rank] : pi)
        if (active(sym)) res.perms.levels[k].emplace(sym, rank);
      const auto& level_pi = res.perms.levels[k];
      auto rank = [&level_pi](SymbolId a) -> std::uint32_t {
        auto it = level_pi.find(a);
        return it == level_pi.end() ? 0 : it->second;
      };
      cur = bc_level(cur, rank, builder);
    }
    res.trace.level_sizes.push_back(cur.size());
    if (cfg.keep_levels) res.trace.level_strings.push_back(cur);
  }
  res.trace.level_count = k;

  if (cur.size() == 1) {
    g.start = cur[0];
  } else {
    g.start = builder.block_symbol(cur);  // wrap rule for the capped build
  }
  res.grammar = std::move(g);
  return res;
}

}  // namespace

CompressResult compress(std::string_view text, const CompressorConfig& cfg) {
  if (text.empty()) throw std::invalid_argument("cannot compress an empty text");

  const std::uint32_t attempts = std::max<std::uint32_t>(cfg.retries, 1);
  CompressResult best;
  bool have_best = false;
  for (std::uint32_t a = 0; a < attempts; ++a) {
    std::uint64_t seed_a = a == 0 ? cfg.seed : mix64(cfg.seed + 0x9e3779b97f4a7c15ull * a);
    CompressResult cand = compress_once(text, cfg, seed_a);
    const std::uint64_t gsz = cand.grammar.grammar_size();
    if (!have_best || gsz < best.grammar.grammar_size()) {
      cand.trace.attempts = a + 1;
      best = std::move(cand);
      have_best = true;
    }
    if (cfg.bound_term <= 0.0 ||
        static_cast<double>(best.grammar.grammar_size()) <=
            cfg.size_threshold * cfg.bound_term)
      return best;
  }
  best.trace.retry_warning = true;
  return best;
}

std::vector<std::uint64_t> phrase_boundaries(const LevelTrace& trace, const Rlslp& g,
                                             std::uint32_t k) {
  if (k >= trace.level_strings.size())
    throw std::runtime_error("level strings not retained (production build)");
  const auto& level = trace.level_strings[k];
  std::vector<std::uint64_t> b;
  b.reserve(level.size() + 1);
  std::uint64_t pos = 0;
  b.push_back(0);
  for (SymbolId s : level) {
    pos += g.exp_len[s];
    b.push_back(pos);
  }
  return b;
}

}  // namespace didx

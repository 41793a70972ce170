#include "didx/extraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace didx {

namespace {

constexpr std::uint64_t kMod = Extractor::kMod;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kMod);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;  // both < 2^61, no overflow
  return s >= kMod ? s - kMod : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kMod - b;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace

Extractor::Extractor(const Rlslp& g, std::uint64_t seed) : g_(&g), seed_(seed) {
  Rng rng(seed, /*stream=*/2);
  base_ = 2 + rng.below(kMod - 3);  // uniform in [2..q-2]
  base_inv_ = powmod(base_, kMod - 2);

  const std::size_t n_syms = g.num_symbols();
  fp_fwd_.assign(n_syms, 0);
  fp_rev_.assign(n_syms, 0);
  bpow_.assign(n_syms, 0);
  child_off_.assign(g.rules.size(), {});
  cpfx_fwd_.assign(g.rules.size(), {});
  cpfx_rev_.assign(g.rules.size(), {});

  for (SymbolId a = 0; a < g.sigma; ++a) {
    fp_fwd_[a] = fp_rev_[a] = a % kMod;
    bpow_[a] = base_;
  }
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const SymbolId id = g.sigma + static_cast<SymbolId>(i);
    const Rule& r = g.rules[i];
    if (r.kind == Rule::Kind::Block) {
      auto& off = child_off_[i];
      auto& pf = cpfx_fwd_[i];
      auto& pr = cpfx_rev_[i];
      off.reserve(r.children.size());
      pf.reserve(r.children.size());
      pr.reserve(r.children.size());
      Fingerprint f, frev;
      std::uint64_t pos = 0, bp = 1;
      for (SymbolId c : r.children) {
        f = concat(f, {fp_fwd_[c], g.exp_len[c]});
        // rev of the prefix grows on the left: rev(P·c) = rev(c)·rev(P)
        frev = concat({fp_rev_[c], g.exp_len[c]}, frev);
        pos += g.exp_len[c];
        off.push_back(pos);
        pf.push_back(f.value);
        pr.push_back(frev.value);
        bp = mulmod(bp, bpow_[c]);
      }
      fp_fwd_[id] = f.value;
      fp_rev_[id] = frev.value;
      bpow_[id] = bp;
    } else {
      fp_fwd_[id] = power({fp_fwd_[r.base], g.exp_len[r.base]}, r.count).value;
      fp_rev_[id] = power({fp_rev_[r.base], g.exp_len[r.base]}, r.count).value;
      // b^(len*count) via repeated squaring on the base symbol's power
      std::uint64_t bp = 1, sq = bpow_[r.base], e = r.count;
      while (e) {
        if (e & 1) bp = mulmod(bp, sq);
        sq = mulmod(sq, sq);
        e >>= 1;
      }
      bpow_[id] = bp;
    }
  }
}

std::uint64_t Extractor::pow_base(std::uint64_t e) const { return powmod(base_, e); }

std::uint64_t Extractor::pow_base_inv(std::uint64_t e) const { return powmod(base_inv_, e); }

Fingerprint Extractor::concat(const Fingerprint& a, const Fingerprint& b) const {
  if (a.len == 0) return b;
  if (b.len == 0) return a;
  return {addmod(mulmod(a.value, pow_base(b.len)), b.value), a.len + b.len};
}

// fp of the same block repeated `times`; repetition commutes under concat
Fingerprint Extractor::power(const Fingerprint& f, std::uint64_t times) const {
  Fingerprint r, sq = f;
  while (times) {
    if (times & 1) r = concat(r, sq);
    if (times >>= 1) sq = concat(sq, sq);
  }
  return r;
}

void Extractor::extract_range(SymbolId a, std::uint64_t start, std::uint64_t len,
                              std::string& out) const {
  struct Frame {
    SymbolId sym;
    std::uint64_t start, len;
  };
  std::vector<Frame> stack{{a, start, len}};
  std::vector<Frame> parts;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.len == 0) continue;
    if (g_->is_terminal(f.sym)) {
      out.push_back(static_cast<char>(f.sym));
      continue;
    }
    const Rule& r = g_->rule(f.sym);
    parts.clear();
    if (r.kind == Rule::Kind::Block) {
      const auto& off = child_off_[f.sym - g_->sigma];
      // first child whose end offset exceeds f.start
      std::size_t ci = std::lower_bound(off.begin(), off.end(), f.start + 1) - off.begin();
      std::uint64_t cbeg = ci ? off[ci - 1] : 0;
      std::uint64_t remaining = f.len, pos = f.start;
      while (remaining > 0) {
        const SymbolId c = r.children[ci];
        const std::uint64_t local = pos - cbeg;
        const std::uint64_t take = std::min(remaining, g_->exp_len[c] - local);
        parts.push_back({c, local, take});
        remaining -= take;
        pos += take;
        cbeg = off[ci];
        ++ci;
      }
    } else {
      const std::uint64_t bl = g_->exp_len[r.base];
      std::uint64_t remaining = f.len, pos = f.start;
      while (remaining > 0) {
        const std::uint64_t local = pos % bl;
        const std::uint64_t take = std::min(remaining, bl - local);
        parts.push_back({r.base, local, take});
        remaining -= take;
        pos += take;
      }
    }
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) stack.push_back(*it);
  }
}

std::string Extractor::extract_prefix(SymbolId a, std::uint64_t l) const {
  std::string out;
  const std::uint64_t take = std::min(l, g_->exp_len[a]);
  out.reserve(take);
  extract_range(a, 0, take, out);
  return out;
}

std::string Extractor::extract_suffix(SymbolId a, std::uint64_t l) const {
  std::string out;
  const std::uint64_t take = std::min(l, g_->exp_len[a]);
  out.reserve(take);
  extract_range(a, g_->exp_len[a] - take, take, out);
  return out;
}

void Extractor::check_range(std::uint64_t i, std::uint64_t j) const {
  if (i < 1 || j < i || j > g_->text_len())
    throw std::invalid_argument("substring range out of bounds");
}

std::string Extractor::extract_substring(std::uint64_t i, std::uint64_t j) const {
  check_range(i, j);
  std::string out;
  out.reserve(j - i + 1);
  extract_range(g_->start, i - 1, j - i + 1, out);
  return out;
}

std::uint8_t Extractor::char_at(SymbolId a, std::uint64_t pos) const {
  while (!g_->is_terminal(a)) {
    const Rule& r = g_->rule(a);
    if (r.kind == Rule::Kind::Block) {
      const auto& off = child_off_[a - g_->sigma];
      std::size_t ci = std::lower_bound(off.begin(), off.end(), pos + 1) - off.begin();
      pos -= ci ? off[ci - 1] : 0;
      a = r.children[ci];
    } else {
      pos %= g_->exp_len[r.base];
      a = r.base;
    }
  }
  return static_cast<std::uint8_t>(a);
}

Fingerprint Extractor::fingerprint_range(SymbolId a, std::uint64_t start,
                                         std::uint64_t len, bool reversed) const {
  if (len == 0) return {};
  if (start == 0 && len == g_->exp_len[a])
    return {reversed ? fp_rev_[a] : fp_fwd_[a], len};

  const Rule& r = g_->rule(a);  // partial range => a is a nonterminal
  Fingerprint acc;
  auto piece = [&](SymbolId c, std::uint64_t s, std::uint64_t l) {
    Fingerprint f = fingerprint_range(c, s, l, reversed);
    acc = reversed ? concat(f, acc) : concat(acc, f);
  };
  if (r.kind == Rule::Kind::Block) {
    const std::size_t ri = a - g_->sigma;
    const auto& off = child_off_[ri];
    const std::uint64_t end = start + len;
    std::size_t lo = std::lower_bound(off.begin(), off.end(), start + 1) - off.begin();
    std::size_t hi = std::lower_bound(off.begin(), off.end(), end) - off.begin();
    const std::uint64_t lo_beg = lo ? off[lo - 1] : 0;
    if (lo == hi)  // range inside a single child
      return fingerprint_range(r.children[lo], start - lo_beg, len, reversed);
    std::size_t full_lo = lo, full_hi = hi;  // children fully covered
    if (start > lo_beg) {
      piece(r.children[lo], start - lo_beg, off[lo] - start);
      ++full_lo;
    }
    if (full_hi > full_lo) {
      // fp of exp(children[full_lo..full_hi)) from the cumulative tables
      const std::uint64_t pbeg = full_lo ? off[full_lo - 1] : 0;
      const std::uint64_t pend = off[full_hi - 1];
      Fingerprint f;
      f.len = pend - pbeg;
      if (reversed) {
        const std::uint64_t qa = full_lo ? cpfx_rev_[ri][full_lo - 1] : 0;
        f.value = mulmod(submod(cpfx_rev_[ri][full_hi - 1], qa), pow_base_inv(pbeg));
      } else {
        const std::uint64_t pa = full_lo ? cpfx_fwd_[ri][full_lo - 1] : 0;
        f.value = submod(cpfx_fwd_[ri][full_hi - 1], mulmod(pa, pow_base(f.len)));
      }
      acc = reversed ? concat(f, acc) : concat(acc, f);
    }
    if (end > off[full_hi - 1]) piece(r.children[hi], 0, end - off[hi - 1]);
  } else {
    const std::uint64_t bl = g_->exp_len[r.base];
    std::uint64_t remaining = len, pos = start;
    // leading partial copy, a run of full copies, trailing partial copy
    if (pos % bl != 0) {
      const std::uint64_t local = pos % bl;
      const std::uint64_t take = std::min(remaining, bl - local);
      piece(r.base, local, take);
      remaining -= take;
      pos += take;
    }
    if (remaining >= bl) {
      const std::uint64_t full = remaining / bl;
      Fingerprint f = power(
          {reversed ? fp_rev_[r.base] : fp_fwd_[r.base], bl}, full);
      acc = reversed ? concat(f, acc) : concat(acc, f);
      remaining -= full * bl;
      pos += full * bl;
    }
    if (remaining > 0) piece(r.base, 0, remaining);
  }
  return acc;
}

Fingerprint Extractor::fingerprint_substring(std::uint64_t i, std::uint64_t j) const {
  check_range(i, j);
  return fingerprint_range(g_->start, i - 1, j - i + 1);
}

Fingerprint Extractor::fingerprint_of(std::string_view s) const {
  Fingerprint f{0, s.size()};
  for (char c : s)
    f.value = addmod(mulmod(f.value, base_), static_cast<unsigned char>(c) % kMod);
  return f;
}

}  // namespace didx

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "didx/index.hpp"

namespace didx {

namespace {

constexpr char kMagic[4] = {'D', 'I', 'D', 'X'};
constexpr std::uint8_t kVersion = 1;

enum SectionId : std::uint64_t {
  kSecHeader = 1,
  kSecRules = 2,
  kSecPerms = 3,
  kSecGrid = 4,
  kSecTrie = 5,
};

// little-endian primitives, pinned regardless of host order
void put_u64(std::string& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u8(std::string& b, std::uint8_t v) { b.push_back(static_cast<char>(v)); }

class Reader {
 public:
  Reader(const std::string& data, std::size_t pos, std::size_t end)
      : data_(data), pos_(pos), end_(end) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  bool done() const { return pos_ == end_; }

 private:
  void need(std::size_t n) {
    if (pos_ + n > end_) throw FormatError("truncated section");
  }
  const std::string& data_;
  std::size_t pos_, end_;
};

std::string encode_header(const Index& ix) {
  std::string b;
  put_u64(b, ix.text_len());
  put_u32(b, ix.grammar.sigma);
  put_u64(b, ix.seed);
  put_u8(b, static_cast<std::uint8_t>((ix.capped ? 1 : 0) | (ix.retry_warning ? 2 : 0)));
  put_u32(b, ix.attempts);
  put_u64(b, ix.delta.num);
  put_u64(b, ix.delta.den);
  put_u32(b, ix.sigma_used);
  std::uint64_t bt;
  std::memcpy(&bt, &ix.bound_term, sizeof(bt));
  put_u64(b, bt);
  put_u32(b, ix.level_count);
  put_u64(b, ix.grammar.rules.size());
  put_u32(b, ix.grammar.start);
  put_u32(b, ix.trie.max_len());
  return b;
}

std::string encode_rules(const Index& ix) {
  std::string b;
  for (const Rule& r : ix.grammar.rules) {
    if (r.kind == Rule::Kind::Run) {
      put_u8(b, 1);
      put_u32(b, r.base);
      put_u64(b, r.count);
    } else {
      put_u8(b, 0);
      put_u64(b, r.children.size());
      for (SymbolId c : r.children) put_u32(b, c);
    }
  }
  return b;
}

std::string encode_perms(const Index& ix) {
  std::string b;
  put_u64(b, ix.perms.levels.size());
  for (const auto& level : ix.perms.levels) {
    std::vector<std::pair<SymbolId, std::uint32_t>> entries(level.begin(), level.end());
    std::sort(entries.begin(), entries.end());
    put_u64(b, entries.size());
    for (auto [sym, rank] : entries) {
      put_u32(b, sym);
      put_u32(b, rank);
    }
  }
  return b;
}

std::string encode_grid(const Index& ix) {
  std::string b;
  put_u64(b, ix.grid.points.size());
  for (const GridPoint& pt : ix.grid.points) {
    put_u32(b, pt.parent);
    put_u32(b, pt.child_index);
    put_u64(b, pt.border);
    put_u8(b, pt.kind == Rule::Kind::Run ? 1 : 0);
    put_u64(b, pt.weight);
    put_u64(b, pt.run_count);
    put_u64(b, pt.base_len);
    put_u32(b, pt.x_rank);
    put_u32(b, pt.y_rank);
  }
  auto put_axis = [&b](const std::vector<AxisKey>& axis) {
    put_u64(b, axis.size());
    for (const AxisKey& k : axis) {
      put_u32(b, k.sym);
      put_u64(b, k.start);
      put_u64(b, k.len);
      put_u8(b, k.rev ? 1 : 0);
    }
  };
  put_axis(ix.grid.x_axis);
  put_axis(ix.grid.y_axis);
  return b;
}

std::string encode_trie(const Index& ix) {
  std::string b;
  put_u32(b, ix.trie.max_len());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> edges(ix.trie.edges().begin(),
                                                             ix.trie.edges().end());
  std::sort(edges.begin(), edges.end());
  put_u64(b, edges.size());
  for (auto [k, v] : edges) {
    put_u64(b, k);
    put_u32(b, v);
  }
  return b;
}

}  // namespace

void save_index(const Index& ix, std::ostream& out) {
  const std::pair<std::uint64_t, std::string> sections[] = {
      {kSecHeader, encode_header(ix)}, {kSecRules, encode_rules(ix)},
      {kSecPerms, encode_perms(ix)},   {kSecGrid, encode_grid(ix)},
      {kSecTrie, encode_trie(ix)},
  };
  const std::uint64_t count = std::size(sections);
  std::string head;
  head.append(kMagic, 4);
  put_u8(head, kVersion);
  put_u64(head, count);
  std::uint64_t off = head.size() + count * 24;
  std::string table;
  for (const auto& [id, payload] : sections) {
    put_u64(table, id);
    put_u64(table, off);
    put_u64(table, payload.size());
    off += payload.size();
  }
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(table.data(), static_cast<std::streamsize>(table.size()));
  for (const auto& [id, payload] : sections)
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("write failure");
}

Index load_index(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 13 || std::memcmp(data.data(), kMagic, 4) != 0)
    throw FormatError("bad magic");
  if (static_cast<std::uint8_t>(data[4]) != kVersion) throw FormatError("bad version");

  Reader top(data, 5, data.size());
  const std::uint64_t count = top.u64();
  struct Sec {
    std::uint64_t id, off, size;
  };
  std::vector<Sec> secs;
  for (std::uint64_t i = 0; i < count; ++i) {
    Sec s{top.u64(), top.u64(), top.u64()};
    if (s.off + s.size > data.size()) throw FormatError("section out of bounds");
    secs.push_back(s);
  }
  auto find = [&](std::uint64_t id) -> const Sec* {
    for (const Sec& s : secs)
      if (s.id == id) return &s;
    return nullptr;  // unknown ids elsewhere are skipped
  };
  auto require = [&](std::uint64_t id) -> Reader {
    const Sec* s = find(id);
    if (!s) throw FormatError("missing section " + std::to_string(id));
    return Reader(data, s->off, s->off + s->size);
  };

  Index ix;
  Reader h = require(kSecHeader);
  const std::uint64_t n = h.u64();
  ix.grammar.sigma = h.u32();
  ix.seed = h.u64();
  const std::uint8_t flags = h.u8();
  ix.capped = flags & 1;
  ix.retry_warning = flags & 2;
  ix.attempts = h.u32();
  ix.delta.num = h.u64();
  ix.delta.den = h.u64();
  ix.sigma_used = h.u32();
  const std::uint64_t bt = h.u64();
  std::memcpy(&ix.bound_term, &bt, sizeof(bt));
  ix.level_count = h.u32();
  const std::uint64_t rule_count = h.u64();
  const SymbolId start = h.u32();
  const std::uint32_t trie_len = h.u32();

  Reader rr = require(kSecRules);
  ix.grammar.exp_len.assign(ix.grammar.sigma, 1);
  for (std::uint64_t i = 0; i < rule_count; ++i) {
    const std::uint8_t kind = rr.u8();
    const SymbolId next_id = static_cast<SymbolId>(ix.grammar.num_symbols());
    if (kind == 1) {
      const SymbolId base = rr.u32();
      const std::uint64_t cnt = rr.u64();
      if (base >= next_id || cnt < 2) throw FormatError("bad run rule");
      ix.grammar.add_rule(Rule::run(base, cnt));
    } else if (kind == 0) {
      const std::uint64_t arity = rr.u64();
      if (arity < 2) throw FormatError("bad block arity");
      std::vector<SymbolId> ch(arity);
      for (auto& c : ch) {
        c = rr.u32();
        if (c >= next_id) throw FormatError("bad block child");
      }
      ix.grammar.add_rule(Rule::block(std::move(ch)));
    } else {
      throw FormatError("bad rule kind");
    }
  }
  if (start >= ix.grammar.num_symbols()) throw FormatError("bad start symbol");
  ix.grammar.start = start;
  if (ix.grammar.text_len() != n) throw FormatError("text length mismatch");

  Reader pr = require(kSecPerms);
  ix.perms.levels.resize(pr.u64());
  for (auto& level : ix.perms.levels) {
    const std::uint64_t entries = pr.u64();
    level.reserve(entries);
    for (std::uint64_t i = 0; i < entries; ++i) {
      const SymbolId sym = pr.u32();
      level.emplace(sym, pr.u32());
    }
  }

  Reader gr = require(kSecGrid);
  ix.grid.points.resize(gr.u64());
  for (GridPoint& pt : ix.grid.points) {
    pt.parent = gr.u32();
    pt.child_index = gr.u32();
    pt.border = gr.u64();
    pt.kind = gr.u8() ? Rule::Kind::Run : Rule::Kind::Block;
    pt.weight = gr.u64();
    pt.run_count = gr.u64();
    pt.base_len = gr.u64();
    pt.x_rank = gr.u32();
    pt.y_rank = gr.u32();
  }
  auto read_axis = [&gr](std::vector<AxisKey>& axis) {
    axis.resize(gr.u64());
    for (AxisKey& k : axis) {
      k.sym = gr.u32();
      k.start = gr.u64();
      k.len = gr.u64();
      k.rev = gr.u8() != 0;
    }
  };
  read_axis(ix.grid.x_axis);
  read_axis(ix.grid.y_axis);

  Reader tr = require(kSecTrie);
  const std::uint32_t tlen = tr.u32();
  if (tlen != trie_len) throw FormatError("trie length mismatch");
  std::unordered_map<std::uint64_t, std::uint32_t> edges;
  const std::uint64_t edge_count = tr.u64();
  edges.reserve(edge_count);
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    const std::uint64_t k = tr.u64();
    edges.emplace(k, tr.u32());
  }
  ix.trie.restore(tlen, std::move(edges));

  ix.finalize_derived();
  return ix;
}

void save_index_file(const Index& ix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_index(ix, out);
}

Index load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_index(in);
}

}  // namespace didx

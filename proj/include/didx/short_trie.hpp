#ifndef DIDX_SHORT_TRIE_HPP
#define DIDX_SHORT_TRIE_HPP

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace didx {

// Membership trie over every substring of S up to a length threshold; used to
// reject short absent patterns in O(m) before any grid work.
class ShortTrie {
 public:
  ShortTrie() = default;
  ShortTrie(std::string_view s, std::uint32_t max_len);

  std::uint32_t max_len() const { return max_len_; }
  std::uint64_t node_count() const { return children_.size() + 1; }  // + root

  // true iff q occurs in the indexed text; valid for |q| <= max_len
  bool contains(std::string_view q) const;

  // serialization surface: edges as (parent, byte) -> child
  const std::unordered_map<std::uint64_t, std::uint32_t>& edges() const { return children_; }
  void restore(std::uint32_t max_len, std::unordered_map<std::uint64_t, std::uint32_t> edges);

 private:
  std::uint32_t max_len_ = 0;
  std::uint32_t next_id_ = 1;  // 0 is the root
  std::unordered_map<std::uint64_t, std::uint32_t> children_;

  static std::uint64_t edge_key(std::uint32_t node, std::uint8_t c) {
    return (static_cast<std::uint64_t>(node) << 8) | c;
  }
  std::uint32_t step(std::uint32_t node, std::uint8_t c) const;
  std::uint32_t step_or_add(std::uint32_t node, std::uint8_t c);
};

}  // namespace didx

#endif

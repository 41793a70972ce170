#include "didx/short_trie.hpp"

#include <algorithm>

namespace didx {

ShortTrie::ShortTrie(std::string_view s, std::uint32_t max_len) : max_len_(max_len) {
  // slide a window of length max_len and insert each window's prefix path
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::uint32_t node = 0;
    const std::size_t end = std::min(s.size(), i + max_len);
    for (std::size_t j = i; j < end; ++j)
      node = step_or_add(node, static_cast<std::uint8_t>(s[j]));
  }
}

std::uint32_t ShortTrie::step(std::uint32_t node, std::uint8_t c) const {
  auto it = children_.find(edge_key(node, c));
  return it == children_.end() ? UINT32_MAX : it->second;
}

std::uint32_t ShortTrie::step_or_add(std::uint32_t node, std::uint8_t c) {
  auto [it, inserted] = children_.try_emplace(edge_key(node, c), next_id_);
  if (inserted) ++next_id_;
  return it->second;
}

bool ShortTrie::contains(std::string_view q) const {
  std::uint32_t node = 0;
  for (char c : q) {
    node = step(node, static_cast<std::uint8_t>(c));
    if (node == UINT32_MAX) return false;
  }
  return true;
}

void ShortTrie::restore(std::uint32_t max_len,
                        std::unordered_map<std::uint64_t, std::uint32_t> edges) {
  max_len_ = max_len;
  children_ = std::move(edges);
  next_id_ = static_cast<std::uint32_t>(children_.size() + 1);
  for (const auto& [k, v] : children_) next_id_ = std::max(next_id_, v + 1);
}

}  // namespace didx

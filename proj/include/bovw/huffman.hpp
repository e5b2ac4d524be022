#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bovw/core.hpp"

namespace bovw {

struct HuffmanNode {
  static constexpr std::int32_t kNone = -1;

  std::uint64_t frequency = 0;
  std::int32_t left = kNone;   // bit 0
  std::int32_t right = kNone;  // bit 1, the smaller-frequency child
  std::int32_t parent = kNone;
  std::optional<WordId> word;  // set on leaves only

  bool is_leaf() const noexcept { return word.has_value(); }
};

// Frequency-built Huffman tree over words 0..K-1.
//
// Merging always takes the two smallest nodes. Among equal frequencies,
// leaves come first in ascending word id, then internal nodes in creation
// order. The first node taken becomes the right child.
class HuffmanTree {
 public:
  // Throws DomainError when `frequencies` is empty.
  explicit HuffmanTree(std::span<const std::uint64_t> frequencies);

  std::size_t leaf_count() const noexcept { return leaf_of_.size(); }
  std::int32_t root() const noexcept { return root_; }
  const std::vector<HuffmanNode>& nodes() const noexcept { return nodes_; }

  std::int32_t leaf(WordId id) const;
  std::size_t depth(WordId id) const;
  // Root-to-leaf code, '0' for left and '1' for right.
  std::string code(WordId id) const;
  // Sum of frequency * depth over all leaves.
  std::uint64_t weighted_path_length() const;

 private:
  std::vector<HuffmanNode> nodes_;
  std::vector<std::int32_t> leaf_of_;
  std::int32_t root_ = HuffmanNode::kNone;
};

}  // namespace bovw

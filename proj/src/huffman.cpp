#include "bovw/huffman.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "bovw/errors.hpp"

namespace bovw {

HuffmanTree::HuffmanTree(std::span<const std::uint64_t> frequencies) {
  if (frequencies.empty()) throw DomainError("huffman: no symbols");
  const std::size_t k = frequencies.size();
  nodes_.reserve(2 * k - 1);
  leaf_of_.resize(k);

  // (frequency, rank, node): leaves rank by word id, internal nodes by
  // k + creation order, which realizes the tie-break in one ordering.
  using Key = std::tuple<std::uint64_t, std::size_t, std::int32_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (std::size_t i = 0; i < k; ++i) {
    HuffmanNode leaf;
    leaf.frequency = frequencies[i];
    leaf.word = static_cast<WordId>(i);
    leaf_of_[i] = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(leaf);
    heap.emplace(frequencies[i], i, leaf_of_[i]);
  }

  std::size_t created = 0;
  while (heap.size() > 1) {
    const auto [f_small, r_small, small] = heap.top();
    heap.pop();
    const auto [f_large, r_large, large] = heap.top();
    heap.pop();
    HuffmanNode parent;
    parent.frequency = f_small + f_large;
    parent.right = small;
    parent.left = large;
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_[small].parent = id;
    nodes_[large].parent = id;
    nodes_.push_back(parent);
    heap.emplace(parent.frequency, k + created++, id);
  }
  root_ = std::get<2>(heap.top());
}

std::int32_t HuffmanTree::leaf(WordId id) const {
  if (id >= leaf_of_.size()) throw NotFoundError("huffman: unknown word id " + std::to_string(id));
  return leaf_of_[id];
}

std::size_t HuffmanTree::depth(WordId id) const {
  std::size_t d = 0;
  for (auto n = leaf(id); nodes_[n].parent != HuffmanNode::kNone; n = nodes_[n].parent) ++d;
  return d;
}

std::string HuffmanTree::code(WordId id) const {
  std::string bits;
  for (auto n = leaf(id); nodes_[n].parent != HuffmanNode::kNone; n = nodes_[n].parent) {
    bits.push_back(nodes_[nodes_[n].parent].right == n ? '1' : '0');
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

std::uint64_t HuffmanTree::weighted_path_length() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < leaf_of_.size(); ++i) {
    total += nodes_[leaf_of_[i]].frequency * depth(static_cast<WordId>(i));
  }
  return total;
}

}  // namespace bovw

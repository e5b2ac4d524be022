#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/huffman.hpp"

namespace bovw {

struct PsimEntry {
  WordId word_id = 0;
  double sim = 0.0;

  friend bool operator==(const PsimEntry&, const PsimEntry&) = default;
};

// Potential similar words of one vocabulary word: the word itself first
// (sim 1), then every other word with sim > mu0_build, by descending sim
// and ascending id on ties.
using PsimList = std::span<const PsimEntry>;

// Offline index of potential similar visual words (PSMI).
//
// Each vocabulary word is a leaf of a frequency-built Huffman tree whose
// payload is the word's PsimList. Lists live in one flat array; a leaf
// addresses its slice through the word id it carries.
class PsimIndex {
 public:
  // Assembles an index from stored parts (used by the loader). Lists are
  // given per word id in ascending order. Throws FormatError when any
  // structural invariant fails.
  PsimIndex(std::size_t dimension, SimilarityThreshold build_threshold,
            std::uint64_t vocab_checksum, std::vector<std::uint64_t> frequencies,
            std::vector<std::vector<PsimEntry>> lists);

  std::size_t size() const noexcept { return frequencies_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  SimilarityThreshold build_threshold() const noexcept { return build_threshold_; }
  std::uint64_t vocab_checksum() const noexcept { return vocab_checksum_; }
  const std::vector<std::uint64_t>& frequencies() const noexcept { return frequencies_; }
  const HuffmanTree& tree() const noexcept { return tree_; }

  // The word's list via the id-to-leaf map. Throws NotFoundError.
  PsimList huffman_search(WordId id) const;

  std::size_t total_entries() const noexcept { return entries_.size(); }

  friend bool operator==(const PsimIndex& x, const PsimIndex& y);

 private:
  std::size_t dimension_;
  SimilarityThreshold build_threshold_;
  std::uint64_t vocab_checksum_;
  std::vector<std::uint64_t> frequencies_;
  std::vector<std::size_t> offsets_;  // K + 1, indexed by word id
  std::vector<PsimEntry> entries_;
  HuffmanTree tree_;
};

// All-pairs cosine over the vocabulary, kept above `build_threshold`.
// Work is spread over `threads` workers; the result does not depend on it.
PsimIndex build_psmi_index(const Vocabulary& vocab, SimilarityThreshold build_threshold,
                           std::size_t threads = 1);

// PSMI matching. Every word of A and B must carry a vocabulary id
// (PreconditionError otherwise) and mu0 must not be below the build
// threshold (PreconditionError). Equal to smin_match on such inputs.
// Cost is one list scan per B word plus linear work in A.
MatchOutcome psmi_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                        const PsimIndex& index);

double psmi_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                       const PsimIndex& index);

}  // namespace bovw

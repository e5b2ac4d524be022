#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bovw/core.hpp"

namespace bovw {

struct TopHit {
  std::uint32_t b_index = 0;
  double cosine = 0.0;

  friend bool operator==(const TopHit&, const TopHit&) = default;
};

// Exact top-1 cosine index over the words of one image (SMII's gamma).
// Rows are packed contiguously with their norms cached at build time, so a
// probe costs one inner product per row instead of three.
class TempIndex {
 public:
  // Throws DomainError for an empty image or a zero-norm vector and
  // ContractError for ragged vectors.
  explicit TempIndex(const ImageObject& b);

  std::size_t size() const noexcept { return norms_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  // Exact argmax of cosine(q, b_j), smallest index on ties. No threshold.
  // Throws ContractError on dimension mismatch, DomainError on zero norm.
  TopHit query_top1(std::span<const double> q) const;

 private:
  std::span<const double> row(std::size_t j) const noexcept {
    return {rows_.data() + j * dimension_, dimension_};
  }

  std::size_t dimension_ = 0;
  std::vector<double> rows_;
  std::vector<double> norms_;
};

// Instrumentation for tests: how many indexes were built and probed.
struct SmiiCounters {
  std::size_t builds = 0;
  std::size_t probes = 0;
};

// SMII: build one TempIndex over B, probe it once per word of A, threshold.
MatchOutcome smii_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                        SmiiCounters* counters = nullptr);

double smii_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0);

}  // namespace bovw

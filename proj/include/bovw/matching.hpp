#pragma once

#include <optional>
#include <span>

#include "bovw/core.hpp"

namespace bovw {

struct BestMatch {
  double mu = 0.0;
  std::optional<std::uint32_t> b_index;

  friend bool operator==(const BestMatch&, const BestMatch&) = default;
};

// Maximum cosine of `word` over `b_words`, kept only when strictly above
// mu0. Ties on the maximum go to the smallest index.
BestMatch best_match(const VisualWord& word, std::span<const VisualWord> b_words,
                     SimilarityThreshold mu0);

// SMIN: double loop of cosines, one best_match per word of A.
MatchOutcome smin_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0);

double smin_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0);

}  // namespace bovw

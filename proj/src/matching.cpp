#include "bovw/matching.hpp"

#include "bovw/errors.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

BestMatch best_match(const VisualWord& word, std::span<const VisualWord> b_words,
                     SimilarityThreshold mu0) {
  if (b_words.empty()) throw DomainError("best_match: empty candidate set");
  double best = -1.0;
  std::uint32_t best_index = 0;
  for (std::size_t j = 0; j < b_words.size(); ++j) {
    const double c = cosine(word.components(), b_words[j].components());
    if (c > best) {
      best = c;
      best_index = static_cast<std::uint32_t>(j);
    }
  }
  if (best > mu0.value()) return BestMatch{best, best_index};
  return BestMatch{};
}

MatchOutcome smin_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0) {
  if (a.empty() || b.empty()) throw DomainError("smin_match: empty image");
  MatchBuilder builder(a.size());
  for (const VisualWord& w : a.words) {
    const BestMatch hit = best_match(w, b.words, mu0);
    if (hit.b_index) {
      builder.matched(*hit.b_index, hit.mu);
    } else {
      builder.unmatched();
    }
  }
  return std::move(builder).finish();
}

double smin_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0) {
  return image_similarity(a, b, smin_match(a, b, mu0));
}

}  // namespace bovw

#include "bovw/temp_index.hpp"

#include <string>

#include "bovw/errors.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

TempIndex::TempIndex(const ImageObject& b) {
  if (b.empty()) throw DomainError("temp index: empty image '" + b.image_id + "'");
  dimension_ = b.words.front().vector->size();
  rows_.reserve(b.size() * dimension_);
  norms_.reserve(b.size());
  for (const VisualWord& w : b.words) {
    const auto v = w.components();
    if (v.size() != dimension_) throw ContractError("temp index: ragged word vectors");
    const double n = norm(v);
    if (!(n > 0.0)) throw DomainError("temp index: zero-norm word vector");
    rows_.insert(rows_.end(), v.begin(), v.end());
    norms_.push_back(n);
  }
}

TopHit TempIndex::query_top1(std::span<const double> q) const {
  if (q.size() != dimension_) {
    throw ContractError("temp index: query dimension " + std::to_string(q.size()) +
                        ", index dimension " + std::to_string(dimension_));
  }
  const double nq = norm(q);
  if (!(nq > 0.0)) throw DomainError("temp index: zero-norm query");
  TopHit best{0, -1.0};
  for (std::size_t j = 0; j < norms_.size(); ++j) {
    const double c = cosine_with_norms(q, nq, row(j), norms_[j]);
    if (c > best.cosine) best = TopHit{static_cast<std::uint32_t>(j), c};
  }
  return best;
}

MatchOutcome smii_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                        SmiiCounters* counters) {
  if (a.empty() || b.empty()) throw DomainError("smii_match: empty image");
  const TempIndex index(b);
  if (counters) ++counters->builds;
  MatchBuilder builder(a.size());
  for (const VisualWord& w : a.words) {
    const TopHit hit = index.query_top1(w.components());
    if (counters) ++counters->probes;
    if (hit.cosine > mu0.value()) {
      builder.matched(hit.b_index, hit.cosine);
    } else {
      builder.unmatched();
    }
  }
  return std::move(builder).finish();
}

double smii_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0) {
  return image_similarity(a, b, smii_match(a, b, mu0));
}

}  // namespace bovw

#include "bovw/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bovw/checksum.hpp"
#include "bovw/errors.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

VectorHandle make_vector(FeatureVector components) {
  return std::make_shared<const FeatureVector>(std::move(components));
}

SimilarityThreshold::SimilarityThreshold(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw DomainError("similarity threshold must lie in [0, 1), got " + std::to_string(value));
  }
}

namespace {

bool same_components(const VectorHandle& x, const VectorHandle& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  return *x == *y;
}

}  // namespace

bool operator==(const VisualWord& x, const VisualWord& y) {
  return x.word_id == y.word_id && x.weight == y.weight && same_components(x.vector, y.vector);
}

bool operator==(const VocabEntry& x, const VocabEntry& y) {
  return x.word_id == y.word_id && x.frequency == y.frequency &&
         same_components(x.vector, y.vector);
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("vocabulary must contain at least one word");
  std::sort(entries_.begin(), entries_.end(),
            [](const VocabEntry& x, const VocabEntry& y) { return x.word_id < y.word_id; });
  if (!entries_.front().vector) throw ValidationError("vocabulary entry without vector");
  dimension_ = entries_.front().vector->size();
  if (dimension_ == 0) throw ValidationError("vocabulary vectors must have dimension >= 1");

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const VocabEntry& e = entries_[i];
    const std::string where = "vocabulary word " + std::to_string(e.word_id);
    if (e.word_id != i) {
      if (i > 0 && e.word_id == entries_[i - 1].word_id) {
        throw ValidationError("duplicate " + where);
      }
      throw ValidationError("vocabulary ids must be contiguous from 0; missing id " +
                            std::to_string(i));
    }
    if (!e.vector) throw ValidationError(where + " has no vector");
    if (e.vector->size() != dimension_) {
      throw ValidationError(where + " has dimension " + std::to_string(e.vector->size()) +
                            ", expected " + std::to_string(dimension_));
    }
    for (double c : *e.vector) {
      if (!std::isfinite(c)) throw ValidationError(where + " has a non-finite component");
    }
    const double n = norm(*e.vector);
    if (std::abs(n - 1.0) > kUnitTolerance) {
      throw ValidationError(where + " is not unit length (norm " + std::to_string(n) + ")");
    }
  }
}

const VocabEntry& Vocabulary::entry(WordId id) const {
  if (!contains(id)) throw NotFoundError("word id " + std::to_string(id) + " not in vocabulary");
  return entries_[id];
}

VisualWord Vocabulary::make_word(WordId id, double weight) const {
  return VisualWord{id, entry(id).vector, weight};
}

std::vector<std::uint64_t> Vocabulary::frequencies() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.frequency);
  return out;
}

std::uint64_t Vocabulary::checksum() const {
  std::uint64_t state = kFnvOffset;
  std::vector<unsigned char> buf;
  buf.reserve(12 + 8 * dimension_);
  for (const auto& e : entries_) {
    buf.clear();
    put_u32(buf, e.word_id);
    put_u64(buf, e.frequency);
    for (double c : *e.vector) put_f64(buf, c);
    state = fnv1a(buf, state);
  }
  return state;
}

MatchBuilder::MatchBuilder(std::size_t a_size) {
  out_.mu.reserve(a_size);
}

MatchOutcome MatchBuilder::finish() && {
  auto& ids = out_.matched_b_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return std::move(out_);
}

void validate_image(const ImageObject& image) {
  if (image.empty()) throw DomainError("image '" + image.image_id + "' has no visual words");
  for (const auto& w : image.words) {
    if (!(w.weight > 0.0 && w.weight <= 1.0)) {
      throw DomainError("image '" + image.image_id + "' has weight " + std::to_string(w.weight) +
                        " outside (0, 1]");
    }
  }
}

double image_similarity(const ImageObject& a, const ImageObject& b, const MatchOutcome& match) {
  validate_image(a);
  validate_image(b);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (match.mu.size() != m) throw ContractError("match does not cover every word of A");

  double numerator = 0.0;
  double matched_energy = 0.0;  // sum of lambda^2 * xi_a * xi_b
  std::vector<char> b_used(n, 0);
  for (const WordPair& p : match.pairs) {
    if (p.a_index >= m || p.b_index >= n) throw ContractError("match pair index out of range");
    if (match.mu[p.a_index] != p.lambda) throw ContractError("match mu disagrees with its pairs");
    const double xa = a.words[p.a_index].weight;
    const double xb = b.words[p.b_index].weight;
    numerator += p.lambda * xa * xb;
    matched_energy += p.lambda * p.lambda * xa * xb;
    b_used[p.b_index] = 1;
  }
  if (match.pairs.empty()) return 0.0;

  double sum_a = 0.0, unmatched_a = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sum_a += a.words[i].weight;
    if (match.mu[i] == 0.0) unmatched_a += a.words[i].weight;
  }
  double sum_b = 0.0, unmatched_b = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum_b += b.words[j].weight;
    if (!b_used[j]) unmatched_b += b.words[j].weight;
  }

  const double denom =
      std::sqrt(sum_a * sum_b) * std::sqrt(matched_energy + unmatched_a * unmatched_b);
  return std::min(numerator / denom, 1.0);
}

std::vector<double> normalize_weights(std::span<const double> raw) {
  if (raw.empty()) return {};
  double max = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DomainError("weights must be finite and positive, got " + std::to_string(v));
    }
    max = std::max(max, v);
  }
  std::vector<double> out;
  out.reserve(raw.size());
  for (double v : raw) out.push_back(v / max);
  return out;
}

}  // namespace bovw

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bovw {

using WordId = std::uint32_t;
using FeatureVector = std::vector<double>;
// Word vectors are shared: every vocabulary-valued word points at the
// vocabulary's own storage, so its components match the entry bit for bit.
using VectorHandle = std::shared_ptr<const FeatureVector>;

VectorHandle make_vector(FeatureVector components);

// Threshold mu0 in [0, 1). A threshold of 1 would reject identical words.
class SimilarityThreshold {
 public:
  explicit SimilarityThreshold(double value);

  double value() const noexcept { return value_; }

  auto operator<=>(const SimilarityThreshold&) const = default;

 private:
  double value_;
};

struct VisualWord {
  std::optional<WordId> word_id;
  VectorHandle vector;
  double weight = 1.0;

  std::span<const double> components() const noexcept { return *vector; }

  friend bool operator==(const VisualWord& x, const VisualWord& y);
};

struct ImageObject {
  std::string image_id;
  std::vector<VisualWord> words;

  std::size_t size() const noexcept { return words.size(); }
  bool empty() const noexcept { return words.empty(); }

  friend bool operator==(const ImageObject&, const ImageObject&) = default;
};

struct VocabEntry {
  WordId word_id = 0;
  std::uint64_t frequency = 0;
  VectorHandle vector;

  friend bool operator==(const VocabEntry& x, const VocabEntry& y);
};

// K entries with ids 0..K-1, one shared dimension d, unit-norm vectors.
class Vocabulary {
 public:
  static constexpr double kUnitTolerance = 1e-9;

  // Entries may arrive in any order; they are sorted by id and validated.
  // Throws ValidationError on duplicate or non-contiguous ids, dimension
  // mismatch, non-finite components or non-unit vectors.
  explicit Vocabulary(std::vector<VocabEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<VocabEntry>& entries() const noexcept { return entries_; }
  bool contains(WordId id) const noexcept { return id < entries_.size(); }

  // Throws NotFoundError for ids outside the vocabulary.
  const VocabEntry& entry(WordId id) const;

  VisualWord make_word(WordId id, double weight) const;

  std::vector<std::uint64_t> frequencies() const;

  // FNV-1a over the canonical little-endian encoding of every entry:
  // word_id (u32), frequency (u64), then each component as IEEE-754 bits.
  std::uint64_t checksum() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<VocabEntry> entries_;
  std::size_t dimension_ = 0;
};

struct WordPair {
  std::uint32_t a_index = 0;
  std::uint32_t b_index = 0;
  double lambda = 0.0;

  friend bool operator==(const WordPair&, const WordPair&) = default;
};

// Result of matching image A against image B. Pairs are in ascending
// a_index order; mu has one entry per word of A (0 when unmatched);
// matched_b_ids lists the distinct B indices used, ascending.
struct MatchOutcome {
  std::vector<WordPair> pairs;
  std::vector<double> mu;
  std::vector<std::uint32_t> matched_b_ids;

  std::size_t pair_count() const noexcept { return pairs.size(); }

  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

// Incremental assembly of a MatchOutcome, one A word at a time in order.
class MatchBuilder {
 public:
  explicit MatchBuilder(std::size_t a_size);

  void matched(std::uint32_t b_index, double lambda) {
    const auto a_index = static_cast<std::uint32_t>(out_.mu.size());
    out_.pairs.push_back(WordPair{a_index, b_index, lambda});
    out_.mu.push_back(lambda);
    out_.matched_b_ids.push_back(b_index);
  }
  void unmatched() { out_.mu.push_back(0.0); }

  MatchOutcome finish() &&;

 private:
  MatchOutcome out_;
};

// Throws DomainError when the image is empty or a weight lies outside (0, 1].
void validate_image(const ImageObject& image);

// Weighted similarity of A and B over a completed match of A against B.
// A B word matched by several A words contributes its weight to each pair;
// U_b sums the weights of B words that no pair uses. Returns 0 when no pair
// exists. Throws DomainError on invalid images and ContractError when the
// match does not fit the images.
double image_similarity(const ImageObject& a, const ImageObject& b,
                        const MatchOutcome& match);

// Divides by the maximum so the largest weight is exactly 1.
std::vector<double> normalize_weights(std::span<const double> raw);

}  // namespace bovw

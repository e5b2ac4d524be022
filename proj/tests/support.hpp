#pragma once

// Test-side oracles and instance generators. The oracles share only the
// cosine kernel with the library; selection, thresholding, tie-breaking and
// the similarity arithmetic are written out independently here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/random.hpp"
#include "bovw/synthetic.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw::testing {

inline ImageObject raw_image(const std::vector<std::pair<FeatureVector, double>>& words,
                             std::string id = "img") {
  ImageObject img{std::move(id), {}};
  for (const auto& [v, w] : words) img.words.push_back(VisualWord{std::nullopt, make_vector(v), w});
  return img;
}

// Random vocabulary in which every fifth word copies the vector of an
// earlier one, so equal-cosine ties occur between distinct ids.
inline Vocabulary tie_prone_vocabulary(std::size_t k, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const Vocabulary base = random_vocabulary(k, d, rng);
  std::vector<VocabEntry> entries = base.entries();
  for (std::size_t i = 5; i < k; i += 5) entries[i].vector = entries[rng.uniform_index(i)].vector;
  return Vocabulary(std::move(entries));
}

// Vocabulary-valued image; ids may repeat.
inline ImageObject random_vocab_image(const Vocabulary& vocab, std::size_t words, Rng& rng,
                                      std::string id = "img") {
  ImageObject img{std::move(id), {}};
  for (std::size_t i = 0; i < words; ++i) {
    const auto wid = static_cast<WordId>(rng.uniform_index(vocab.size()));
    img.words.push_back(vocab.make_word(wid, 0.05 + 0.95 * rng.uniform01()));
  }
  return img;
}

struct OraclePair {
  std::size_t a = 0;
  std::size_t b = 0;
  double lambda = 0.0;
};

struct OracleMatch {
  std::vector<OraclePair> pairs;
  std::vector<double> mu;
};

// Double loop: for every a, the first b attaining the maximal cosine; kept
// when strictly above mu0.
inline OracleMatch oracle_match(const ImageObject& a, const ImageObject& b, double mu0) {
  OracleMatch out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<double> cos(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) cos[j] = cosine(a.words[i].components(), b.words[j].components());
    std::size_t arg = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (cos[j] > cos[arg]) arg = j;
    }
    if (cos[arg] > mu0) {
      out.pairs.push_back({i, arg, cos[arg]});
      out.mu.push_back(cos[arg]);
    } else {
      out.mu.push_back(0.0);
    }
  }
  return out;
}

inline bool same_match(const OracleMatch& o, const MatchOutcome& m) {
  if (o.mu != m.mu || o.pairs.size() != m.pairs.size()) return false;
  std::vector<std::uint32_t> used;
  for (std::size_t k = 0; k < o.pairs.size(); ++k) {
    if (o.pairs[k].a != m.pairs[k].a_index || o.pairs[k].b != m.pairs[k].b_index ||
        o.pairs[k].lambda != m.pairs[k].lambda) {
      return false;
    }
    bool seen = false;
    for (auto u : used) seen |= u == o.pairs[k].b;
    if (!seen) used.push_back(static_cast<std::uint32_t>(o.pairs[k].b));
  }
  std::sort(used.begin(), used.end());
  return used == m.matched_b_ids;
}

// The weighted similarity written out in long double straight from its
// definition: matched terms, total weights, unmatched weights on each side.
inline long double oracle_similarity(const ImageObject& a, const ImageObject& b, const OracleMatch& match) {
  if (match.pairs.empty()) return 0.0L;
  long double num = 0, energy = 0, total_a = 0, total_b = 0, free_a = 0, free_b = 0;
  std::vector<bool> a_hit(a.size(), false), b_hit(b.size(), false);
  for (const auto& p : match.pairs) {
    const long double wa = a.words[p.a].weight, wb = b.words[p.b].weight, l = p.lambda;
    num += l * wa * wb;
    energy += l * l * wa * wb;
    a_hit[p.a] = true;
    b_hit[p.b] = true;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    total_a += a.words[i].weight;
    if (!a_hit[i]) free_a += a.words[i].weight;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    total_b += b.words[j].weight;
    if (!b_hit[j]) free_b += b.words[j].weight;
  }
  return num / (std::sqrt(total_a * total_b) * std::sqrt(energy + free_a * free_b));
}

}  // namespace bovw::testing

#include "bovw/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "bovw/errors.hpp"
#include "bovw/tfidf.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

void GeneratorConfig::validate() const {
  if (vocab_size == 0 || dimension == 0 || image_count == 0 || words_per_image == 0) {
    throw DomainError("generator: counts must be >= 1");
  }
  if (words_per_image > vocab_size) throw DomainError("generator: more words per image than vocabulary words");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) throw DomainError("generator: zipf exponent must be >= 0");
  if (!(duplicate_fraction >= 0.0 && duplicate_fraction <= 1.0)) throw DomainError("generator: duplicate fraction outside [0, 1]");
  if (!(perturbation >= 0.0 && perturbation <= 1.0)) throw DomainError("generator: perturbation outside [0, 1]");
  const auto dups = static_cast<std::size_t>(std::llround(duplicate_fraction * static_cast<double>(image_count)));
  if (dups >= image_count) throw DomainError("generator: duplicates leave no original images");
}

std::string synthetic_image_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img%06zu", index);
  return buf;
}

Vocabulary random_vocabulary(std::size_t vocab_size, std::size_t dimension, Rng& rng) {
  std::vector<VocabEntry> entries;
  entries.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    FeatureVector v(dimension);
    double n = 0.0;
    while (!(n > 1e-12)) {
      for (double& c : v) c = rng.normal();
      n = norm(v);
    }
    for (double& c : v) c /= n;
    entries.push_back(VocabEntry{static_cast<WordId>(i), 0, make_vector(std::move(v))});
  }
  return Vocabulary(std::move(entries));
}

std::vector<WordId> sample_distinct_words(std::size_t count, const ZipfSampler& sampler, Rng& rng) {
  std::vector<WordId> out;
  std::unordered_set<WordId> seen;
  out.reserve(count);
  while (out.size() < count) {
    const auto id = static_cast<WordId>(sampler(rng));
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

ImageObject perturb_image(const ImageObject& source, double rho, const Vocabulary& vocab, Rng& rng,
                          std::string image_id) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("perturbation outside [0, 1]");
  const std::size_t m = source.size();
  std::unordered_set<WordId> present;
  for (const auto& w : source.words) {
    if (!w.word_id) throw PreconditionError("perturb_image: source words need vocabulary ids");
    present.insert(*w.word_id);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);

  // Fresh words avoid the source and each other while the vocabulary allows.
  constexpr int kMaxTries = 64;
  std::vector<WordId> fresh(m);
  for (std::size_t k = 0; k < m; ++k) {
    WordId id = 0;
    for (int t = 0; t < kMaxTries; ++t) {
      id = static_cast<WordId>(rng.uniform_index(vocab.size()));
      if (!present.contains(id)) break;
    }
    present.insert(id);
    fresh[k] = id;
  }
  std::vector<double> jitter(m);
  for (double& j : jitter) j = 0.9 + 0.2 * rng.uniform01();

  const auto replaced = static_cast<std::size_t>(std::llround(rho * static_cast<double>(m)));
  std::vector<WordId> ids(m);
  for (std::size_t i = 0; i < m; ++i) ids[i] = *source.words[i].word_id;
  for (std::size_t k = 0; k < replaced; ++k) ids[order[k]] = fresh[k];

  std::vector<double> raw(m);
  for (std::size_t i = 0; i < m; ++i) raw[i] = source.words[i].weight * jitter[i];
  const std::vector<double> weights = normalize_weights(raw);

  ImageObject out{std::move(image_id), {}};
  out.words.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.words.push_back(vocab.make_word(ids[i], weights[i]));
  return out;
}

Dataset generate_synthetic(const GeneratorConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const Vocabulary vocab = random_vocabulary(config.vocab_size, config.dimension, rng);

  const auto dup_count = static_cast<std::size_t>(
      std::llround(config.duplicate_fraction * static_cast<double>(config.image_count)));
  const std::size_t originals = config.image_count - dup_count;

  const ZipfSampler zipf(config.vocab_size, config.zipf_exponent);
  std::vector<CountedImage> counted(originals);
  for (std::size_t i = 0; i < originals; ++i) {
    counted[i].image_id = synthetic_image_id(i);
    for (WordId id : sample_distinct_words(config.words_per_image, zipf, rng)) {
      counted[i].counts.push_back(WordCount{id, 1});
    }
  }
  Dataset ds = tfidf_weights(counted, vocab);

  // Sources without replacement while possible.
  std::vector<std::size_t> pool(originals);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = 0; k < dup_count; ++k) {
    std::size_t source;
    if (dup_count <= originals) {
      const std::size_t j = k + rng.uniform_index(originals - k);
      std::swap(pool[k], pool[j]);
      source = pool[k];
    } else {
      source = rng.uniform_index(originals);
    }
    const std::string id = synthetic_image_id(originals + k);
    ds.images.push_back(perturb_image(ds.images[source], config.perturbation, vocab, rng, id));
    ds.duplicate_of[id] = ds.images[source].image_id;
  }

  // Frequencies count occurrences; vector handles stay shared with the words.
  ds.vocab = with_frequencies(vocab, ds);
  return ds;
}

}  // namespace bovw

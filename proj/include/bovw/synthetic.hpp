#pragma once

#include <cstdint>
#include <string>

#include "bovw/core.hpp"
#include "bovw/dataset.hpp"
#include "bovw/random.hpp"

namespace bovw {

struct GeneratorConfig {
  std::uint64_t seed = 7;
  std::size_t vocab_size = 1024;  // K
  std::size_t dimension = 64;     // d
  std::size_t image_count = 1000;
  std::size_t words_per_image = 40;  // m
  double zipf_exponent = 1.0;
  double duplicate_fraction = 0.1;
  double perturbation = 0.0;  // rho

  // Throws DomainError.
  void validate() const;
};

// K unit vectors drawn uniformly on the sphere, zero frequencies.
Vocabulary random_vocabulary(std::size_t vocab_size, std::size_t dimension, Rng& rng);

// m distinct ids. With zipf_exponent 0 the draw is uniform.
std::vector<WordId> sample_distinct_words(std::size_t count, const ZipfSampler& sampler, Rng& rng);

// Near-duplicate of a vocabulary-valued image: a fraction rho of its
// positions get fresh vocabulary words, every weight is scaled by a factor in
// [0.9, 1.1], then weights are renormalized. All random draws happen whatever
// rho is, so with the same generator state a larger rho replaces a superset
// of the positions replaced by a smaller one.
ImageObject perturb_image(const ImageObject& source, double rho, const Vocabulary& vocab, Rng& rng,
                          std::string image_id);

// Originals with Zipf-drawn distinct words and tf-idf weights, followed by
// round(duplicate_fraction * image_count) perturbed duplicates, recorded in
// Dataset::duplicate_of. Vocabulary frequencies are occurrence counts.
// Image ids are "img000000", "img000001", ...
Dataset generate_synthetic(const GeneratorConfig& config);

std::string synthetic_image_id(std::size_t index);

}  // namespace bovw

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/dataset.hpp"

namespace bovw {

struct WordCount {
  WordId word_id = 0;
  std::uint64_t count = 0;
};

// An image before weighting: occurrence counts per vocabulary word.
// Repeated ids are summed.
struct CountedImage {
  std::string image_id;
  std::vector<WordCount> counts;
};

// Per image, raw weight = (count / max_count) * ln(1 + N / df), with N the
// number of images and df the number of images containing the word, then
// normalize_weights. Words keep their first-appearance order.
// Throws DomainError for zero counts, NotFoundError for unknown ids.
Dataset tfidf_weights(std::span<const CountedImage> images, const Vocabulary& vocab);

// Count records, {"id":"img0","words":[{"w":3,"c":2},...]} per line.
std::vector<CountedImage> load_counted_images(const std::filesystem::path& path);

}  // namespace bovw

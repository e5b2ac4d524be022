#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bovw/core.hpp"

namespace bovw {

struct Dataset {
  std::vector<ImageObject> images;
  std::optional<Vocabulary> vocab;
  // Ground truth of the synthetic benchmarks: duplicate id -> source id.
  std::map<std::string, std::string> duplicate_of;

  // Throws NotFoundError.
  const ImageObject& find(std::string_view image_id) const;

  // Unique image ids, resolvable word ids, consistent dimensions, valid
  // weights, ground truth naming existing images. Throws ValidationError.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Line formats (JSON Lines, one record per line):
//
//   vocabulary  {"id":0,"freq":5,"vec":[1.0,0.0]}
//   images      {"id":"img0","words":[{"w":3,"x":0.5},{"v":[0.6,0.8],"x":1.0}],
//                "dup_of":"img7"}
//
// An image word is either a vocabulary id ("w") or an inline vector ("v").
// "x" is the weight in (0, 1]; count files use "c" instead (see tfidf.hpp).
// "dup_of" is optional. Blank lines are ignored.

// Throws ParseError (with line number) on malformed records and
// ValidationError on semantic violations.
Vocabulary load_vocabulary(const std::filesystem::path& path);
void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);

// Word-id records need `vocab`; their vectors are shared with it.
Dataset load_images(const std::filesystem::path& path, const Vocabulary* vocab = nullptr);
void save_images(const Dataset& dataset, const std::filesystem::path& path);

// Raw word vectors, one {"vec":[...]} (optional "freq") per line; vectors
// are unit-normalized and numbered in file order.
Vocabulary load_raw_vectors(const std::filesystem::path& path);

// Sets each word's frequency to its number of occurrences in `dataset`.
Vocabulary with_frequencies(const Vocabulary& vocab, const Dataset& dataset);

}  // namespace bovw

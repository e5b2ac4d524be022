#include "bovw/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "bovw/errors.hpp"
#include "word_id.hpp"

namespace bovw {

namespace {

std::vector<WordCount> aggregate(const CountedImage& img) {
  std::vector<WordCount> out;
  std::unordered_map<WordId, std::size_t> slot;
  for (const auto& wc : img.counts) {
    if (wc.count == 0) throw DomainError("image '" + img.image_id + "' has a zero count");
    const auto [it, fresh] = slot.emplace(wc.word_id, out.size());
    if (fresh) {
      out.push_back(wc);
    } else {
      out[it->second].count += wc.count;
    }
  }
  return out;
}

}  // namespace

Dataset tfidf_weights(std::span<const CountedImage> images, const Vocabulary& vocab) {
  std::vector<std::vector<WordCount>> merged;
  merged.reserve(images.size());
  std::vector<std::uint64_t> df(vocab.size(), 0);
  for (const auto& img : images) {
    merged.push_back(aggregate(img));
    if (merged.back().empty()) throw DomainError("image '" + img.image_id + "' has no words");
    for (const auto& wc : merged.back()) {
      if (!vocab.contains(wc.word_id)) {
        throw NotFoundError("image '" + img.image_id + "' references unknown word " + std::to_string(wc.word_id));
      }
      ++df[wc.word_id];
    }
  }

  const double n = static_cast<double>(images.size());
  Dataset ds;
  ds.vocab = vocab;
  ds.images.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& words = merged[i];
    std::uint64_t max_count = 0;
    for (const auto& wc : words) max_count = std::max(max_count, wc.count);
    std::vector<double> raw;
    raw.reserve(words.size());
    for (const auto& wc : words) {
      const double tf = static_cast<double>(wc.count) / static_cast<double>(max_count);
      raw.push_back(tf * std::log(1.0 + n / static_cast<double>(df[wc.word_id])));
    }
    const std::vector<double> weights = normalize_weights(raw);
    ImageObject img{images[i].image_id, {}};
    img.words.reserve(words.size());
    for (std::size_t k = 0; k < words.size(); ++k) {
      img.words.push_back(vocab.make_word(words[k].word_id, weights[k]));
    }
    ds.images.push_back(std::move(img));
  }
  return ds;
}

std::vector<CountedImage> load_counted_images(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<CountedImage> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto r = nlohmann::json::parse(line);
      CountedImage img;
      img.image_id = r.at("id").get<std::string>();
      for (const auto& w : r.at("words")) {
        const WordId id = parse_word_id(w.at("w"), path.string(), line_no);
        const auto& c = w.at("c");
        if (!c.is_number_unsigned()) throw ParseError(path.string(), line_no, "count must be a non-negative integer");
        img.counts.push_back(WordCount{id, c.get<std::uint64_t>()});
      }
      out.push_back(std::move(img));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return out;
}

}  // namespace bovw

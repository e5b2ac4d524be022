#include "bovw/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "bovw/errors.hpp"
#include "bovw/vector_ops.hpp"
#include "word_id.hpp"

namespace bovw {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

// Calls fn(record, line_number) for every non-blank line.
template <class Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error&) {
      throw ParseError(path.string(), line_no, "malformed record");
    }
    if (!record.is_object()) throw ParseError(path.string(), line_no, "record is not an object");
    try {
      fn(record, line_no);
    } catch (const Json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
}

FeatureVector parse_vector(const Json& j, const std::string& path, std::size_t line) {
  if (!j.is_array() || j.empty()) throw ParseError(path, line, "vector must be a non-empty array");
  FeatureVector v;
  v.reserve(j.size());
  for (const auto& c : j) {
    if (!c.is_number()) throw ParseError(path, line, "vector component is not a number");
    const double x = c.get<double>();
    if (!std::isfinite(x)) throw ParseError(path, line, "non-finite vector component");
    v.push_back(x);
  }
  return v;
}

std::string at_line(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

const ImageObject& Dataset::find(std::string_view image_id) const {
  for (const auto& img : images) {
    if (img.image_id == image_id) return img;
  }
  throw NotFoundError("image '" + std::string(image_id) + "' not in dataset");
}

void Dataset::validate() const {
  std::set<std::string_view> ids;
  std::optional<std::size_t> dim;
  if (vocab) dim = vocab->dimension();
  for (const auto& img : images) {
    if (!ids.insert(img.image_id).second) throw ValidationError("duplicate image id '" + img.image_id + "'");
    if (img.empty()) throw ValidationError("image '" + img.image_id + "' has no words");
    for (const auto& w : img.words) {
      if (!(w.weight > 0.0 && w.weight <= 1.0)) {
        throw ValidationError("image '" + img.image_id + "' has weight outside (0, 1]");
      }
      if (!w.vector || w.vector->empty()) throw ValidationError("image '" + img.image_id + "' has a word without vector");
      if (!dim) dim = w.vector->size();
      if (w.vector->size() != *dim) throw ValidationError("image '" + img.image_id + "' has a vector of wrong dimension");
      if (w.word_id) {
        if (!vocab || !vocab->contains(*w.word_id)) {
          throw ValidationError("image '" + img.image_id + "' references unknown word " + std::to_string(*w.word_id));
        }
        if (*vocab->entry(*w.word_id).vector != *w.vector) {
          throw ValidationError("image '" + img.image_id + "' word vector differs from its vocabulary entry");
        }
      }
    }
  }
  for (const auto& [dup, src] : duplicate_of) {
    if (!ids.contains(dup) || !ids.contains(src)) {
      throw ValidationError("ground truth references unknown image ('" + dup + "' -> '" + src + "')");
    }
  }
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
  std::vector<VocabEntry> entries;
  for_each_record(path, [&](const Json& r, std::size_t line) {
    const WordId id = parse_word_id(r.at("id"), path.string(), line);
    const auto& freq = r.at("freq");
    if (!freq.is_number_unsigned()) throw ParseError(path.string(), line, "freq must be a non-negative integer");
    entries.push_back(VocabEntry{id, freq.get<std::uint64_t>(),
                                 make_vector(parse_vector(r.at("vec"), path.string(), line))});
  });
  return Vocabulary(std::move(entries));
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& e : vocab.entries()) {
    OrderedJson r;
    r["id"] = e.word_id;
    r["freq"] = e.frequency;
    r["vec"] = *e.vector;
    out << r.dump() << '\n';
  }
  if (!out) throw ValidationError("failed writing " + path.string());
}

Dataset load_images(const std::filesystem::path& path, const Vocabulary* vocab) {
  Dataset ds;
  if (vocab) ds.vocab = *vocab;
  for_each_record(path, [&](const Json& r, std::size_t line) {
    ImageObject img;
    const auto& id = r.at("id");
    if (!id.is_string()) throw ParseError(path.string(), line, "id must be a string");
    img.image_id = id.get<std::string>();
    const auto& words = r.at("words");
    if (!words.is_array()) throw ParseError(path.string(), line, "words must be an array");
    for (const auto& w : words) {
      if (!w.is_object()) throw ParseError(path.string(), line, "word must be an object");
      if (w.contains("c")) {
        throw ValidationError(at_line(path, line) + "count records need tf-idf weighting, not weights");
      }
      const auto& x = w.at("x");
      if (!x.is_number()) throw ParseError(path.string(), line, "weight must be a number");
      const double weight = x.get<double>();
      if (!(weight > 0.0 && weight <= 1.0)) {
        throw ValidationError(at_line(path, line) + "weight " + std::to_string(weight) + " outside (0, 1]");
      }
      if (w.contains("w")) {
        const WordId wid = parse_word_id(w.at("w"), path.string(), line);
        if (!vocab) throw ValidationError(at_line(path, line) + "word ids require a vocabulary");
        if (!vocab->contains(wid)) {
          throw ValidationError(at_line(path, line) + "word id " + std::to_string(wid) + " not in vocabulary");
        }
        img.words.push_back(vocab->make_word(wid, weight));
      } else {
        img.words.push_back(VisualWord{std::nullopt, make_vector(parse_vector(w.at("v"), path.string(), line)), weight});
      }
    }
    if (img.words.empty()) throw ValidationError(at_line(path, line) + "image has no words");
    if (r.contains("dup_of")) {
      if (!r.at("dup_of").is_string()) throw ParseError(path.string(), line, "dup_of must be a string");
      ds.duplicate_of[img.image_id] = r.at("dup_of").get<std::string>();
    }
    ds.images.push_back(std::move(img));
  });
  ds.validate();
  return ds;
}

void save_images(const Dataset& dataset, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& img : dataset.images) {
    OrderedJson r;
    r["id"] = img.image_id;
    OrderedJson words = OrderedJson::array();
    for (const auto& w : img.words) {
      OrderedJson jw;
      if (w.word_id) {
        jw["w"] = *w.word_id;
      } else {
        jw["v"] = *w.vector;
      }
      jw["x"] = w.weight;
      words.push_back(std::move(jw));
    }
    r["words"] = std::move(words);
    if (const auto it = dataset.duplicate_of.find(img.image_id); it != dataset.duplicate_of.end()) {
      r["dup_of"] = it->second;
    }
    out << r.dump() << '\n';
  }
  if (!out) throw ValidationError("failed writing " + path.string());
}

Vocabulary load_raw_vectors(const std::filesystem::path& path) {
  std::vector<VocabEntry> entries;
  for_each_record(path, [&](const Json& r, std::size_t line) {
    FeatureVector v = parse_vector(r.at("vec"), path.string(), line);
    const double n = norm(v);
    if (!(n > 0.0)) throw ValidationError(at_line(path, line) + "zero vector");
    for (double& c : v) c /= n;
    std::uint64_t freq = 0;
    if (r.contains("freq")) {
      if (!r.at("freq").is_number_unsigned()) throw ParseError(path.string(), line, "freq must be a non-negative integer");
      freq = r.at("freq").get<std::uint64_t>();
    }
    entries.push_back(VocabEntry{static_cast<WordId>(entries.size()), freq, make_vector(std::move(v))});
  });
  return Vocabulary(std::move(entries));
}

Vocabulary with_frequencies(const Vocabulary& vocab, const Dataset& dataset) {
  std::vector<std::uint64_t> counts(vocab.size(), 0);
  for (const auto& img : dataset.images) {
    for (const auto& w : img.words) {
      if (w.word_id && vocab.contains(*w.word_id)) ++counts[*w.word_id];
    }
  }
  std::vector<VocabEntry> entries = vocab.entries();
  for (auto& e : entries) e.frequency = counts[e.word_id];
  return Vocabulary(std::move(entries));
}

}  // namespace bovw

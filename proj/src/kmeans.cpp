#include "bovw/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "bovw/errors.hpp"
#include "bovw/random.hpp"
#include "bovw/tfidf.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

namespace {

struct Points {
  std::size_t dim = 0;
  std::vector<double> data;
  std::vector<std::size_t> image_of;

  std::size_t size() const { return image_of.size(); }
  std::span<const double> at(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

Points flatten(std::span<const FeatureImage> images) {
  Points p;
  for (std::size_t img = 0; img < images.size(); ++img) {
    for (const auto& f : images[img].features) {
      if (p.dim == 0) p.dim = f.size();
      if (f.empty() || f.size() != p.dim) throw DomainError("kmeans: features must share one dimension >= 1");
      const double n = norm(f);
      if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("kmeans: zero or non-finite feature in '" + images[img].image_id + "'");
      for (double c : f) p.data.push_back(c / n);
      p.image_of.push_back(img);
    }
  }
  return p;
}

class Clustering {
 public:
  Clustering(const Points& points, std::size_t k) : points_(points), k_(k), centroids_(k * points.dim) {}

  std::span<double> centroid(std::size_t c) { return {centroids_.data() + c * points_.dim, points_.dim}; }
  std::span<const double> centroid(std::size_t c) const {
    return {centroids_.data() + c * points_.dim, points_.dim};
  }

  void seed(Rng& rng) {
    const std::size_t n = points_.size();
    std::vector<char> chosen(n, 0);
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::size_t pick = rng.uniform_index(n);
    for (std::size_t c = 0; c < k_; ++c) {
      if (c > 0) {
        double total = 0.0;
        for (double d : dist) total += d * d;
        if (total > 0.0) {
          const double u = rng.uniform01() * total;
          double acc = 0.0;
          pick = n;
          for (std::size_t i = 0; i < n; ++i) {
            acc += dist[i] * dist[i];
            if (acc > u) {
              pick = i;
              break;
            }
          }
          // Rounding can leave u at the very top of the range.
          if (pick == n) {
            for (std::size_t i = n; i-- > 0;) {
              if (dist[i] > 0.0) {
                pick = i;
                break;
              }
            }
          }
        } else {
          pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), 0) - chosen.begin());
        }
      }
      chosen[pick] = 1;
      std::copy_n(points_.at(pick).begin(), points_.dim, centroid(c).begin());
      for (std::size_t i = 0; i < n; ++i) {
        dist[i] = std::min(dist[i], std::max(0.0, 1.0 - dot(points_.at(i), centroid(c))));
      }
    }
  }

  // Returns the mean cosine of points to their assigned centroid.
  double assign() {
    const std::size_t n = points_.size();
    assignment_.assign(n, 0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k_; ++c) {
        const double s = dot(points_.at(i), centroid(c));
        if (s > best) {
          best = s;
          assignment_[i] = c;
        }
      }
      total += best;
    }
    return total / static_cast<double>(n);
  }

  // Returns the largest Euclidean centroid movement.
  double update() {
    const std::size_t d = points_.dim;
    std::vector<double> sums(k_ * d, 0.0);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto p = points_.at(i);
      double* s = sums.data() + assignment_[i] * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += p[j];
    }
    double movement = 0.0;
    for (std::size_t c = 0; c < k_; ++c) {
      std::span<const double> s{sums.data() + c * d, d};
      const double n = norm(s);
      if (!(n > 0.0)) continue;  // empty (or cancelling) cluster keeps its centroid
      auto cur = centroid(c);
      double moved = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double next = s[j] / n;
        moved += (next - cur[j]) * (next - cur[j]);
        cur[j] = next;
      }
      movement = std::max(movement, std::sqrt(moved));
    }
    return movement;
  }

  const std::vector<std::size_t>& assignment() const { return assignment_; }

 private:
  const Points& points_;
  std::size_t k_;
  std::vector<double> centroids_;
  std::vector<std::size_t> assignment_;
};

}  // namespace

KMeansResult kmeans_quantize(std::span<const FeatureImage> images, const KMeansOptions& options) {
  if (options.k == 0) throw DomainError("kmeans: k must be >= 1");
  const Points points = flatten(images);
  if (points.size() < options.k) {
    throw DomainError("kmeans: " + std::to_string(points.size()) + " points for k = " + std::to_string(options.k));
  }

  Rng rng(options.seed);
  Clustering clustering(points, options.k);
  clustering.seed(rng);
  std::vector<double> history{clustering.assign()};
  std::size_t iterations = 0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const double movement = clustering.update();
    history.push_back(clustering.assign());
    iterations = it;
    if (movement <= options.tolerance) break;
  }

  // Renumber clusters by first assignment in input order.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> new_id(options.k, kUnset);
  std::size_t next = 0;
  for (std::size_t c : clustering.assignment()) {
    if (new_id[c] == kUnset) new_id[c] = next++;
  }
  for (auto& id : new_id) {
    if (id == kUnset) id = next++;
  }

  std::vector<std::uint64_t> counts(options.k, 0);
  for (std::size_t c : clustering.assignment()) ++counts[new_id[c]];
  std::vector<VocabEntry> entries(options.k);
  for (std::size_t c = 0; c < options.k; ++c) {
    const auto v = clustering.centroid(c);
    const WordId id = static_cast<WordId>(new_id[c]);
    entries[id] = VocabEntry{id, counts[id], make_vector(FeatureVector(v.begin(), v.end()))};
  }
  Vocabulary vocab(std::move(entries));

  std::vector<CountedImage> counted(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) counted[i].image_id = images[i].image_id;
  for (std::size_t p = 0; p < points.size(); ++p) {
    counted[points.image_of[p]].counts.push_back(
        WordCount{static_cast<WordId>(new_id[clustering.assignment()[p]]), 1});
  }
  std::erase_if(counted, [](const CountedImage& c) { return c.counts.empty(); });

  Dataset dataset = tfidf_weights(counted, vocab);
  return KMeansResult{std::move(vocab), std::move(dataset), std::move(history), iterations};
}

std::vector<FeatureImage> load_features(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<FeatureImage> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto r = nlohmann::json::parse(line);
      FeatureImage img{r.at("id").get<std::string>(), {}};
      for (const auto& f : r.at("features")) img.features.push_back(f.get<FeatureVector>());
      out.push_back(std::move(img));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return out;
}

}  // namespace bovw

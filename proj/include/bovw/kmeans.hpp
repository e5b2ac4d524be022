#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/dataset.hpp"

namespace bovw {

// Raw local features of one image, the ingestion boundary for codebooks.
struct FeatureImage {
  std::string image_id;
  std::vector<FeatureVector> features;
};

struct KMeansOptions {
  std::size_t k = 0;
  std::uint64_t seed = 7;
  std::size_t max_iterations = 100;
  double tolerance = 1e-6;  // on the largest centroid movement
};

struct KMeansResult {
  Vocabulary vocab;
  Dataset dataset;  // tf-idf weighted over assignment counts
  std::vector<double> objective_history;  // mean cosine after each assignment
  std::size_t iterations = 0;
};

// Spherical k-means. Centroids are seeded by cosine-distance-weighted
// sampling, kept unit length, and numbered by the order in which input points
// (in file order) are first assigned to them. Frequencies are assignment
// counts. Throws DomainError with fewer points than k or a zero feature.
KMeansResult kmeans_quantize(std::span<const FeatureImage> images, const KMeansOptions& options);

// {"id":"img0","features":[[...],[...]]} per line.
std::vector<FeatureImage> load_features(const std::filesystem::path& path);

}  // namespace bovw

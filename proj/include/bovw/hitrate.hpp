#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bovw/algorithm.hpp"
#include "bovw/dataset.hpp"

namespace bovw {

struct HitRateConfig {
  std::size_t query_count = 100;
  std::vector<double> rho_grid{0.0, 0.1, 0.2, 0.4, 0.8};
  std::size_t top_k = 1;
  double mu0 = 0.7;
  std::uint64_t seed = 7;
  std::vector<Algorithm> algorithms{Algorithm::kPsmi, Algorithm::kBaseline};
  std::size_t threads = 1;

  // Throws DomainError.
  void validate() const;
};

struct HitRateRow {
  double rho = 0.0;
  double m = 0.0;  // mean words per query
  std::size_t dataset_size = 0;
  std::string algo;
  double hit_rate = 0.0;
};

// Near-duplicate retrieval over a dataset with ground truth.
//
// A seeded sample of query_count (duplicate, source) pairs is drawn from the
// ground truth. For every rho, each query is a fresh perturbation of its
// source (perturb_image with a per-query generator, so higher rho replaces a
// superset of words). The query is scored as first argument against every
// dataset image except its stored duplicate; it hits when the source ranks
// within top_k, ties broken by ascending image id.
//
// Throws DomainError without ground truth, vocabulary, or enough queries.
std::vector<HitRateRow> evaluate_hit_rate(const Dataset& dataset, const HitRateConfig& config);

void write_hitrate_csv(std::ostream& out, std::span<const HitRateRow> rows);

}  // namespace bovw

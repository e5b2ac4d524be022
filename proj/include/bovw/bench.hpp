#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bovw/algorithm.hpp"
#include "bovw/core.hpp"

namespace bovw {

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::kSmin, Algorithm::kSmii, Algorithm::kPsmi,
                                    Algorithm::kBaseline};
  std::size_t pair_count = 1000;            // Gamma
  std::vector<std::size_t> m_values{40};    // words of A
  std::vector<std::size_t> n_values;        // words of B; empty means n = m
  std::size_t dimension = 256;
  std::size_t vocab_size = 10000;
  double mu0 = 0.7;
  std::uint64_t seed = 7;
  std::size_t repetitions = 3;
  std::size_t threads = 1;

  // Throws DomainError.
  void validate() const;
};

struct BenchRow {
  std::string algo;
  std::size_t gamma = 0;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::size_t d = 0;
  std::size_t k = 0;
  double mu0 = 0.0;
  std::uint64_t seed = 0;
  double median_ms = 0.0;
  std::optional<double> per_pair_us;
};

// Random vocabulary-valued image pairs for one sweep point; deterministic in
// (seed, m, n). Word ids are distinct within an image, weights normalized.
std::vector<std::pair<ImageObject, ImageObject>> make_bench_pairs(const Vocabulary& vocab, std::size_t count,
                                                                  std::size_t m, std::size_t n,
                                                                  std::uint64_t seed);

// One "psmi-build" row (when PSMI is selected) followed by one row per
// algorithm and sweep point. Each timing is the median of `repetitions`
// passes over all pairs after one warm-up pass. Algorithms are timed one
// after another; within an algorithm, repetitions cycle through the sweep
// points. Data generation and the offline PSMI build are excluded. Throws Error if SMIN, SMII and PSMI
// disagree on any score.
std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

// Shared CSV float format: 6 significant digits.
std::string format_csv_number(double value);

}  // namespace bovw

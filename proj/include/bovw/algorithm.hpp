#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/psmi.hpp"

namespace bovw {

enum class Algorithm { kSmin, kSmii, kPsmi, kBaseline };

std::string_view algorithm_name(Algorithm algo) noexcept;

// Accepts "smin", "smii", "psmi", "baseline" (also "exhaustive-baseline").
// Throws ValidationError.
Algorithm parse_algorithm(std::string_view name);
std::vector<Algorithm> parse_algorithms(std::string_view comma_list);

// Similarity of A against B under one algorithm. PSMI needs an index,
// which must outlive the scorer.
class Scorer {
 public:
  Scorer(Algorithm algo, SimilarityThreshold mu0, const PsimIndex* index = nullptr);

  double operator()(const ImageObject& a, const ImageObject& b) const;

  Algorithm algorithm() const noexcept { return algo_; }

 private:
  Algorithm algo_;
  SimilarityThreshold mu0_;
  const PsimIndex* index_;
};

}  // namespace bovw

#include "bovw/algorithm.hpp"

#include "bovw/baseline.hpp"
#include "bovw/errors.hpp"
#include "bovw/matching.hpp"
#include "bovw/temp_index.hpp"

namespace bovw {

std::string_view algorithm_name(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kSmin: return "smin";
    case Algorithm::kSmii: return "smii";
    case Algorithm::kPsmi: return "psmi";
    case Algorithm::kBaseline: return "baseline";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "smin") return Algorithm::kSmin;
  if (name == "smii") return Algorithm::kSmii;
  if (name == "psmi") return Algorithm::kPsmi;
  if (name == "baseline" || name == "exhaustive-baseline") return Algorithm::kBaseline;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> parse_algorithms(std::string_view comma_list) {
  std::vector<Algorithm> out;
  while (!comma_list.empty()) {
    const auto comma = comma_list.find(',');
    out.push_back(parse_algorithm(comma_list.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    comma_list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ValidationError("no algorithm given");
  return out;
}

Scorer::Scorer(Algorithm algo, SimilarityThreshold mu0, const PsimIndex* index)
    : algo_(algo), mu0_(mu0), index_(index) {
  if (algo == Algorithm::kPsmi && index == nullptr) throw PreconditionError("psmi needs an index");
}

double Scorer::operator()(const ImageObject& a, const ImageObject& b) const {
  switch (algo_) {
    case Algorithm::kSmin: return smin_similarity(a, b, mu0_);
    case Algorithm::kSmii: return smii_similarity(a, b, mu0_);
    case Algorithm::kPsmi: return psmi_similarity(a, b, mu0_, *index_);
    case Algorithm::kBaseline: return mean_vector_similarity(a, b);
  }
  return 0.0;
}

}  // namespace bovw

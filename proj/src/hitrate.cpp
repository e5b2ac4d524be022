#include "bovw/hitrate.hpp"

#include <map>
#include <optional>
#include <string_view>

#include "bovw/bench.hpp"
#include "bovw/errors.hpp"
#include "bovw/parallel.hpp"
#include "bovw/psmi.hpp"
#include "bovw/random.hpp"
#include "bovw/synthetic.hpp"

namespace bovw {

void HitRateConfig::validate() const {
  if (query_count < 1) throw DomainError("hit rate: query count must be >= 1");
  if (top_k < 1) throw DomainError("hit rate: top_k must be >= 1");
  if (rho_grid.empty()) throw DomainError("hit rate: empty rho grid");
  for (double rho : rho_grid) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("hit rate: rho values must lie in [0, 1]");
  }
  if (algorithms.empty()) throw DomainError("hit rate: no algorithms");
  static_cast<void>(SimilarityThreshold(mu0));
}

std::vector<HitRateRow> evaluate_hit_rate(const Dataset& dataset, const HitRateConfig& config) {
  config.validate();
  if (dataset.duplicate_of.empty()) throw DomainError("hit rate: dataset has no ground-truth duplicates");
  if (!dataset.vocab) throw DomainError("hit rate: dataset needs a vocabulary to perturb queries");
  if (config.query_count > dataset.duplicate_of.size()) {
    throw DomainError("hit rate: " + std::to_string(config.query_count) + " queries requested, " +
                      std::to_string(dataset.duplicate_of.size()) + " ground-truth pairs available");
  }
  const Vocabulary& vocab = *dataset.vocab;
  const SimilarityThreshold mu0(config.mu0);

  std::vector<std::pair<std::size_t, std::size_t>> truth;  // (duplicate, source) positions
  {
    std::map<std::string_view, std::size_t> position;
    for (std::size_t i = 0; i < dataset.images.size(); ++i) position[dataset.images[i].image_id] = i;
    for (const auto& [dup, src] : dataset.duplicate_of) truth.emplace_back(position.at(dup), position.at(src));
  }
  Rng sampler(mix_seed(config.seed, 0));
  for (std::size_t k = 0; k < config.query_count; ++k) {
    std::swap(truth[k], truth[k + sampler.uniform_index(truth.size() - k)]);
  }
  truth.resize(config.query_count);

  std::optional<PsimIndex> index;
  for (Algorithm a : config.algorithms) {
    if (a == Algorithm::kPsmi && !index) index.emplace(build_psmi_index(vocab, mu0, config.threads));
  }
  std::vector<Scorer> scorers;
  for (Algorithm a : config.algorithms) scorers.emplace_back(a, mu0, index ? &*index : nullptr);

  const std::size_t n_rho = config.rho_grid.size();
  const std::size_t n_algo = scorers.size();
  // hits[(q * n_rho + r) * n_algo + a]
  std::vector<char> hits(truth.size() * n_rho * n_algo, 0);
  double word_total = 0.0;
  for (const auto& [dup, src] : truth) word_total += static_cast<double>(dataset.images[src].size());

  parallel_slices(truth.size(), config.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> scores(dataset.images.size());
    for (std::size_t q = begin; q < end; ++q) {
      const auto [dup, src] = truth[q];
      const ImageObject& source = dataset.images[src];
      for (std::size_t r = 0; r < n_rho; ++r) {
        Rng rng(mix_seed(config.seed, q + 1));
        const ImageObject query = perturb_image(source, config.rho_grid[r], vocab, rng, "query");
        for (std::size_t a = 0; a < n_algo; ++a) {
          for (std::size_t i = 0; i < dataset.images.size(); ++i) {
            if (i != dup) scores[i] = scorers[a](query, dataset.images[i]);
          }
          const double target = scores[src];
          std::size_t ahead = 0;
          for (std::size_t i = 0; i < dataset.images.size() && ahead < config.top_k; ++i) {
            if (i == dup || i == src) continue;
            if (scores[i] > target ||
                (scores[i] == target && dataset.images[i].image_id < source.image_id)) {
              ++ahead;
            }
          }
          hits[(q * n_rho + r) * n_algo + a] = ahead < config.top_k;
        }
      }
    }
  });

  std::vector<HitRateRow> rows;
  for (std::size_t r = 0; r < n_rho; ++r) {
    for (std::size_t a = 0; a < n_algo; ++a) {
      std::size_t count = 0;
      for (std::size_t q = 0; q < truth.size(); ++q) count += hits[(q * n_rho + r) * n_algo + a];
      rows.push_back(HitRateRow{config.rho_grid[r], word_total / static_cast<double>(truth.size()),
                                dataset.images.size(), std::string(algorithm_name(config.algorithms[a])),
                                static_cast<double>(count) / static_cast<double>(truth.size())});
    }
  }
  return rows;
}

void write_hitrate_csv(std::ostream& out, std::span<const HitRateRow> rows) {
  out << "rho,m,dataset_size,algo,hit_rate\n";
  for (const auto& r : rows) {
    out << format_csv_number(r.rho) << ',' << format_csv_number(r.m) << ',' << r.dataset_size << ','
        << r.algo << ',' << format_csv_number(r.hit_rate) << '\n';
  }
}

}  // namespace bovw

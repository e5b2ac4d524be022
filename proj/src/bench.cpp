#include "bovw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "bovw/errors.hpp"
#include "bovw/parallel.hpp"
#include "bovw/psmi.hpp"
#include "bovw/random.hpp"
#include "bovw/synthetic.hpp"

namespace bovw {

namespace {

using Clock = std::chrono::steady_clock;
using Pairs = std::vector<std::pair<ImageObject, ImageObject>>;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

ImageObject random_image(const Vocabulary& vocab, const ZipfSampler& uniform, std::size_t words,
                         Rng& rng, std::string id) {
  const auto ids = sample_distinct_words(words, uniform, rng);
  std::vector<double> raw(words);
  for (double& w : raw) w = 1.0 - rng.uniform01();
  const auto weights = normalize_weights(raw);
  ImageObject img{std::move(id), {}};
  img.words.reserve(words);
  for (std::size_t i = 0; i < words; ++i) img.words.push_back(vocab.make_word(ids[i], weights[i]));
  return img;
}

// Sum of scores over all pairs; per-worker partial sums are added in worker
// order so the total does not depend on scheduling.
double score_all(const Scorer& scorer, const Pairs& pairs, std::size_t threads) {
  std::vector<double> partial(std::max<std::size_t>(1, threads), 0.0);
  parallel_slices(pairs.size(), threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += scorer(pairs[i].first, pairs[i].second);
    partial[w] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

void BenchConfig::validate() const {
  if (algorithms.empty()) throw DomainError("bench: no algorithms");
  if (pair_count < 1) throw DomainError("bench: pair count must be >= 1");
  if (repetitions < 3) throw DomainError("bench: repetitions must be >= 3");
  if (m_values.empty()) throw DomainError("bench: no m values");
  if (dimension < 1 || vocab_size < 1) throw DomainError("bench: d and K must be >= 1");
  for (std::size_t m : m_values) {
    if (m < 1 || m > vocab_size) throw DomainError("bench: m must lie in [1, K]");
  }
  for (std::size_t n : n_values) {
    if (n < 1 || n > vocab_size) throw DomainError("bench: n must lie in [1, K]");
  }
  static_cast<void>(SimilarityThreshold(mu0));
}

std::vector<std::pair<ImageObject, ImageObject>> make_bench_pairs(const Vocabulary& vocab, std::size_t count,
                                                                  std::size_t m, std::size_t n,
                                                                  std::uint64_t seed) {
  Rng rng(mix_seed(seed, (static_cast<std::uint64_t>(m) << 32) ^ n));
  const ZipfSampler uniform(vocab.size(), 0.0);
  Pairs pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ImageObject a = random_image(vocab, uniform, m, rng, "a" + std::to_string(i));
    ImageObject b = random_image(vocab, uniform, n, rng, "b" + std::to_string(i));
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  config.validate();
  const SimilarityThreshold mu0(config.mu0);
  Rng vocab_rng(mix_seed(config.seed, 0));
  const Vocabulary vocab = random_vocabulary(config.vocab_size, config.dimension, vocab_rng);

  auto base_row = [&](Algorithm algo) {
    BenchRow row;
    row.algo = std::string(algorithm_name(algo));
    row.gamma = config.pair_count;
    row.d = config.dimension;
    row.k = config.vocab_size;
    row.mu0 = config.mu0;
    row.seed = config.seed;
    return row;
  };

  std::vector<BenchRow> rows;
  std::optional<PsimIndex> index;
  if (std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::kPsmi) != config.algorithms.end()) {
    const auto t0 = Clock::now();
    index.emplace(build_psmi_index(vocab, mu0, config.threads));
    BenchRow row = base_row(Algorithm::kPsmi);
    row.algo = "psmi-build";
    row.median_ms = elapsed_ms(t0);
    rows.push_back(row);
  }

  std::vector<std::pair<std::size_t, std::size_t>> sweep;
  for (std::size_t m : config.m_values) {
    if (config.n_values.empty()) {
      sweep.emplace_back(m, m);
    } else {
      for (std::size_t n : config.n_values) sweep.emplace_back(m, n);
    }
  }

  std::vector<Pairs> pairs;
  for (const auto& [m, n] : sweep) pairs.push_back(make_bench_pairs(vocab, config.pair_count, m, n, config.seed));
  const std::size_t algos = config.algorithms.size();
  std::vector<Scorer> scorers;
  for (Algorithm algo : config.algorithms) scorers.emplace_back(algo, mu0, index ? &*index : nullptr);

  // Warm-up pass per (point, algorithm); its score sums are the reference.
  std::vector<double> checks(sweep.size() * algos);
  for (std::size_t p = 0; p < sweep.size(); ++p) {
    std::optional<double> reference;
    for (std::size_t a = 0; a < algos; ++a) {
      checks[p * algos + a] = score_all(scorers[a], pairs[p], config.threads);
      if (config.algorithms[a] == Algorithm::kBaseline) continue;
      if (reference && *reference != checks[p * algos + a]) throw Error("bench: exact algorithms disagree on scores");
      reference = checks[p * algos + a];
    }
  }

  // Each algorithm is timed in its own block so another algorithm's memory
  // traffic never sits between its passes. Within the block, repetitions go
  // round-robin over the points so slow host drift spreads across the sweep.
  std::vector<std::vector<double>> times(sweep.size() * algos);
  for (std::size_t a = 0; a < algos; ++a) {
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      for (std::size_t p = 0; p < sweep.size(); ++p) {
        const auto t0 = Clock::now();
        const double s = score_all(scorers[a], pairs[p], config.threads);
        times[p * algos + a].push_back(elapsed_ms(t0));
        if (s != checks[p * algos + a]) {
          throw Error("bench: non-deterministic scores for " + std::string(algorithm_name(config.algorithms[a])));
        }
      }
    }
  }

  for (std::size_t p = 0; p < sweep.size(); ++p) {
    for (std::size_t a = 0; a < algos; ++a) {
      BenchRow row = base_row(config.algorithms[a]);
      row.m = sweep[p].first;
      row.n = sweep[p].second;
      row.median_ms = median(times[p * algos + a]);
      row.per_pair_us = row.median_ms * 1000.0 / static_cast<double>(config.pair_count);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_csv_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "NA";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(*v)>>) {
      return format_csv_number(*v);
    } else {
      return std::to_string(*v);
    }
  };
  out << "algo,gamma,m,n,d,K,mu0,seed,median_ms,per_pair_us\n";
  for (const auto& r : rows) {
    out << r.algo << ',' << r.gamma << ',' << opt(r.m) << ',' << opt(r.n) << ',' << r.d << ',' << r.k << ','
        << format_csv_number(r.mu0) << ',' << r.seed << ',' << format_csv_number(r.median_ms) << ','
        << opt(r.per_pair_us) << '\n';
  }
}

}  // namespace bovw

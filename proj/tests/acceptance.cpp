// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every selected criterion passes. Arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "bovw/bench.hpp"
#include "bovw/dataset.hpp"
#include "bovw/errors.hpp"
#include "bovw/hitrate.hpp"
#include "bovw/huffman.hpp"
#include "bovw/matching.hpp"
#include "bovw/psmi.hpp"
#include "bovw/psmi_io.hpp"
#include "bovw/synthetic.hpp"
#include "bovw/temp_index.hpp"
#include "bovw/vector_ops.hpp"
#include "support.hpp"

using namespace bovw;
using bovw::testing::raw_image;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and limits.
constexpr double kSpotTol = 1e-5;
constexpr double kSqrtHalfTol = 1e-9;
constexpr double kOracleScoreTol = 1e-12;  // long-double score vs library
constexpr double kEquivalenceBudgetS = 120.0;
constexpr double kPerformanceBudgetS = 600.0;
constexpr double kPsmiGrowthLimit = 0.25;
constexpr double kSminGrowthFloor = 4.0;
constexpr double kSminSlope = 1.0, kSminSlopeTol = 0.15;
constexpr double kPsmiSlope = 1.0, kPsmiSlopeTol = 0.2;
constexpr double kHitRateAtTenth = 0.85;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Words scattered around K/8 centres with varying spread, so cosines cover
// the whole threshold range; every seventh word repeats an earlier vector of
// its cluster to force equal-cosine ties.
Vocabulary clustered_vocabulary(std::size_t k, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t clusters = std::max<std::size_t>(1, k / 8);
  std::vector<FeatureVector> centres(clusters, FeatureVector(d));
  for (auto& c : centres) {
    for (auto& x : c) x = rng.normal();
  }
  std::vector<VocabEntry> entries;
  for (std::size_t i = 0; i < k; ++i) {
    const FeatureVector& c = centres[i % clusters];
    FeatureVector v(d);
    if (i % 7 == 6 && i >= clusters) {
      v = *entries[i - clusters].vector;
    } else {
      const double spread = 0.15 + 1.1 * rng.uniform01();
      const double cn = norm(c);
      for (std::size_t t = 0; t < d; ++t) v[t] = c[t] / cn + spread * rng.normal() / std::sqrt(double(d));
      const double vn = norm(v);
      for (auto& x : v) x /= vn;
    }
    entries.push_back({static_cast<WordId>(i), 1 + rng.uniform_index(100), make_vector(std::move(v))});
  }
  return Vocabulary(std::move(entries));
}

// Words from a few clusters; ids may repeat.
ImageObject clustered_image(const Vocabulary& vocab, std::size_t words, const std::vector<std::size_t>& picks,
                            std::size_t clusters, Rng& rng, std::string id) {
  ImageObject img{std::move(id), {}};
  const std::size_t per_cluster = (vocab.size() + clusters - 1) / clusters;
  for (std::size_t i = 0; i < words; ++i) {
    WordId w;
    do {
      w = static_cast<WordId>(picks[rng.uniform_index(picks.size())] + clusters * rng.uniform_index(per_cluster));
    } while (w >= vocab.size());
    img.words.push_back(vocab.make_word(w, 0.05 + 0.95 * rng.uniform01()));
  }
  return img;
}

struct Instance {
  ImageObject a, b;
  double mu0;
  const PsimIndex* at_mu0;
  const PsimIndex* at_half;
};

// Shared corpus for criteria 1 and 2: 60 pairs per (d, K, mu0).
struct Corpus {
  std::vector<std::unique_ptr<Vocabulary>> vocabs;
  std::vector<std::unique_ptr<PsimIndex>> indexes;
  std::vector<Instance> instances;
};

Corpus build_corpus() {
  Corpus c;
  Rng rng(2024);
  for (std::size_t d : {2u, 16u, 256u}) {
    for (std::size_t k : {64u, 1024u}) {
      c.vocabs.push_back(std::make_unique<Vocabulary>(clustered_vocabulary(k, d, 1000 * d + k)));
      const Vocabulary& vocab = *c.vocabs.back();
      const std::size_t clusters = std::max<std::size_t>(1, k / 8);
      c.indexes.push_back(std::make_unique<PsimIndex>(build_psmi_index(vocab, SimilarityThreshold(0.5))));
      const PsimIndex* half = c.indexes.back().get();
      for (double mu0 : {0.5, 0.7, 0.9}) {
        c.indexes.push_back(std::make_unique<PsimIndex>(build_psmi_index(vocab, SimilarityThreshold(mu0))));
        const PsimIndex* own = c.indexes.back().get();
        for (int p = 0; p < 60; ++p) {
          std::vector<std::size_t> picks;
          for (std::size_t q = 0, nq = 1 + rng.uniform_index(3); q < nq; ++q) picks.push_back(rng.uniform_index(clusters));
          const std::size_t m = 1 + rng.uniform_index(40), n = 1 + rng.uniform_index(40);
          c.instances.push_back({clustered_image(vocab, m, picks, clusters, rng, "a"),
                                 clustered_image(vocab, n, picks, clusters, rng, "b"), mu0, own, half});
        }
      }
    }
  }
  return c;
}

Verdict criterion_equivalence(const Corpus& corpus, double build_s) {
  const auto t0 = Clock::now();
  std::size_t bad = 0, matched_pairs = 0, nonzero = 0;
  for (const Instance& in : corpus.instances) {
    const SimilarityThreshold mu0(in.mu0);
    const MatchOutcome smin = smin_match(in.a, in.b, mu0);
    const MatchOutcome smii = smii_match(in.a, in.b, mu0);
    const MatchOutcome p1 = psmi_match(in.a, in.b, mu0, *in.at_mu0);
    const MatchOutcome p2 = psmi_match(in.a, in.b, mu0, *in.at_half);
    const double s = image_similarity(in.a, in.b, smin);
    const bool same = smin == smii && smin == p1 && smin == p2 && s == smii_similarity(in.a, in.b, mu0) &&
                      s == psmi_similarity(in.a, in.b, mu0, *in.at_mu0) &&
                      s == psmi_similarity(in.a, in.b, mu0, *in.at_half) && s == smin_similarity(in.a, in.b, mu0);
    bad += !same;
    matched_pairs += smin.pairs.size();
    nonzero += s > 0.0;
  }
  const double total = build_s + seconds_since(t0);
  Verdict v;
  v.pass = bad == 0 && corpus.instances.size() >= 1000 && total < kEquivalenceBudgetS;
  v.detail = std::to_string(corpus.instances.size()) + " pairs, " + std::to_string(bad) + " mismatches, " +
             std::to_string(matched_pairs) + " matched word pairs, " + std::to_string(nonzero) +
             " nonzero scores, " + fmt("%.1f s", total);
  return v;
}

Verdict criterion_oracle(const Corpus& corpus) {
  std::size_t bad = 0;
  double worst = 0.0;
  for (const Instance& in : corpus.instances) {
    const auto oracle = bovw::testing::oracle_match(in.a, in.b, in.mu0);
    const MatchOutcome got = smin_match(in.a, in.b, SimilarityThreshold(in.mu0));
    bad += !bovw::testing::same_match(oracle, got);
    const double diff = std::abs(double(bovw::testing::oracle_similarity(in.a, in.b, oracle)) -
                                 image_similarity(in.a, in.b, got));
    worst = std::max(worst, diff);
  }
  Verdict v;
  v.pass = bad == 0 && worst <= kOracleScoreTol;
  v.detail = std::to_string(corpus.instances.size()) + " instances, " + std::to_string(bad) +
             " match mismatches, max score deviation from long-double reference " + fmt("%.2e", worst);
  return v;
}

Verdict criterion_spot_values() {
  const SimilarityThreshold t7(0.7);
  std::vector<std::string> failed;
  auto check = [&](const std::string& name, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) failed.push_back(name + "=" + fmt("%.8f", got));
  };
  // Independent arithmetic for each expected value.
  const double one_pair_of_two = 0.9 / (std::sqrt(2.0 * 2.0) * std::sqrt(0.9 * 0.9 + 1.0 * 1.0));
  const double two_identical = 2.0 / (std::sqrt(2.0 * 2.0) * std::sqrt(2.0 + 0.0));
  const double forward = 1.8 / (std::sqrt(2.0) * std::sqrt(1.64));
  const double backward = 1.0 / (std::sqrt(2.0) * std::sqrt(1.0));
  check("derived 0.33448", one_pair_of_two, 0.33448, kSpotTol);
  check("derived 1/sqrt2", two_identical, 1.0 / std::sqrt(2.0), kSqrtHalfTol);
  check("derived 0.99388", forward, 0.99388, kSpotTol);
  check("derived 0.70711", backward, 0.70711, kSpotTol);

  const auto single = raw_image({{{1, 0}, 1}});
  check("identical single word", smin_similarity(single, single, t7), 1.0, 0.0);
  // lambda = 0.9 between A0 and B0; A1 and B1 stay unmatched.
  const auto a2 = raw_image({{{1, 0}, 1}, {{0, 1}, 1}});
  const auto b2 = raw_image({{{0.9, std::sqrt(0.19)}, 1}, {{-1, 0}, 1}});
  check("one pair of two by two", smin_similarity(a2, b2, t7), 0.33448, kSpotTol);
  check("one pair of two by two (smii)", smii_similarity(a2, b2, t7), one_pair_of_two, 1e-15);
  check("two identical pairs", smin_similarity(a2, a2, t7), 1.0 / std::sqrt(2.0), kSqrtHalfTol);
  const auto asym_a = raw_image({{{1, 0}, 1}, {{0.8, 0.6}, 1}});
  check("asymmetry forward", smin_similarity(asym_a, single, t7), 0.99388, kSpotTol);
  check("asymmetry backward", smin_similarity(single, asym_a, t7), 0.70711, kSpotTol);
  if (smin_similarity(asym_a, single, t7) == smin_similarity(single, asym_a, t7)) failed.push_back("asymmetry");

  Verdict v;
  v.pass = failed.empty();
  v.detail = failed.empty() ? "1.0, 0.33448, 1/sqrt2, 0.99388 / 0.70711 reproduced" : "off: ";
  for (const auto& f : failed) v.detail += f + " ";
  return v;
}

MatchOutcome outcome_of(std::size_t m, const std::vector<WordPair>& pairs) {
  MatchBuilder builder(m);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (next < pairs.size() && pairs[next].a_index == i) {
      builder.matched(pairs[next].b_index, pairs[next].lambda);
      ++next;
    } else {
      builder.unmatched();
    }
  }
  return std::move(builder).finish();
}

Verdict criterion_range_monotonicity() {
  Rng rng(404);
  std::size_t out_of_range = 0, weight_fail = 0, count_fail = 0, grid_fail = 0;
  const auto vocab = bovw::testing::tie_prone_vocabulary(64, 3, 404);
  const auto index = build_psmi_index(vocab, SimilarityThreshold(0.0));

  for (int t = 0; t < 10000; ++t) {
    const auto a = bovw::testing::random_vocab_image(vocab, 1 + rng.uniform_index(30), rng);
    const auto b = bovw::testing::random_vocab_image(vocab, 1 + rng.uniform_index(30), rng);
    const SimilarityThreshold mu0(0.95 * rng.uniform01());
    for (double s : {smin_similarity(a, b, mu0), psmi_similarity(a, b, mu0, index)}) {
      out_of_range += !(s >= 0.0 && s <= 1.0);
    }
  }

  // Directed perturbations with the match held fixed.
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + rng.uniform_index(10), n = 2 + rng.uniform_index(10);
    std::vector<std::pair<FeatureVector, double>> wa, wb;
    for (std::size_t i = 0; i < m; ++i) wa.push_back({{1, 0}, 0.05 + 0.85 * rng.uniform01()});
    for (std::size_t j = 0; j < n; ++j) wb.push_back({{1, 0}, 0.05 + 0.85 * rng.uniform01()});
    std::vector<WordPair> pairs{{0, 0, 0.5 + 0.5 * rng.uniform01()}};
    for (std::uint32_t i = 1; i + 1 < m; ++i) {
      if (rng.uniform01() < 0.5) {
        pairs.push_back({i, static_cast<std::uint32_t>(rng.uniform_index(n - 1)), 1.0 - rng.uniform01()});
      }
    }
    const auto match = outcome_of(m, pairs);
    const double before = image_similarity(raw_image(wa), raw_image(wb), match);
    auto& w = rng.uniform01() < 0.5 ? wa.back().second : wb.back().second;
    w += (1.0 - w) * (0.1 + 0.9 * rng.uniform01());
    weight_fail += !(image_similarity(raw_image(wa), raw_image(wb), match) < before);

    const double base = image_similarity(raw_image(wa), raw_image(wb), match);
    auto grown = wa;
    grown.push_back({{0, 1}, 0.05 + 0.95 * rng.uniform01()});
    count_fail += !(image_similarity(raw_image(grown), raw_image(wb), outcome_of(m + 1, pairs)) < base);
  }

  for (int t = 0; t < 1000; ++t) {
    const auto a = bovw::testing::random_vocab_image(vocab, 1 + rng.uniform_index(20), rng);
    const auto b = bovw::testing::random_vocab_image(vocab, 1 + rng.uniform_index(20), rng);
    std::vector<double> grid(2 + rng.uniform_index(20));
    for (auto& g : grid) g = 0.999 * rng.uniform01();
    std::sort(grid.begin(), grid.end());
    std::size_t last = a.size() + 1;
    bool ok = true;
    for (double g : grid) {
      const std::size_t l = smin_match(a, b, SimilarityThreshold(g)).pairs.size();
      ok &= l <= last && l == psmi_match(a, b, SimilarityThreshold(g), index).pairs.size();
      last = l;
    }
    grid_fail += !ok;
  }

  Verdict v;
  v.pass = out_of_range + weight_fail + count_fail + grid_fail == 0;
  v.detail = "out of range " + std::to_string(out_of_range) + "/20000, weight " + std::to_string(weight_fail) +
             "/1000, count " + std::to_string(count_fail) + "/1000, threshold grids " + std::to_string(grid_fail) +
             "/1000";
  return v;
}

double per_pair(const std::vector<BenchRow>& rows, const std::string& algo, std::size_t m, std::size_t n) {
  for (const auto& r : rows) {
    if (r.algo == algo && r.m == m && r.n == n) return *r.per_pair_us;
  }
  throw Error("missing bench row " + algo);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

const std::vector<std::size_t> kSweep{20, 40, 60, 80, 100};

Verdict criterion_performance() {
  const auto t0 = Clock::now();
  BenchConfig cfg;
  cfg.algorithms = {Algorithm::kSmin, Algorithm::kSmii, Algorithm::kPsmi};
  cfg.pair_count = 1000;
  cfg.m_values = kSweep;
  cfg.n_values = {100};
  cfg.dimension = 256;
  cfg.vocab_size = 10000;
  cfg.mu0 = 0.7;
  cfg.repetitions = 5;
  const auto rows = run_bench(cfg);
  const double psmi = per_pair(rows, "psmi", 100, 100), smii = per_pair(rows, "smii", 100, 100),
               smin = per_pair(rows, "smin", 100, 100);
  const double psmi_growth = psmi / per_pair(rows, "psmi", 20, 100) - 1.0;
  const double smin_ratio = smin / per_pair(rows, "smin", 20, 100);
  const double elapsed = seconds_since(t0);
  const bool order = psmi < smii && smii < smin;
  Verdict v;
  v.pass = order && psmi_growth < kPsmiGrowthLimit && smin_ratio >= kSminGrowthFloor && elapsed < kPerformanceBudgetS;
  v.detail = "us/pair at m=n=100: psmi " + fmt("%.3f", psmi) + " smii " + fmt("%.1f", smii) + " smin " +
             fmt("%.1f", smin) + (order ? " (ordered)" : " (NOT ordered)") + "; psmi growth m 20->100 " +
             fmt("%+.0f%%", 100 * psmi_growth) + " (limit <25%); smin growth " + fmt("%.2fx", smin_ratio) +
             " (need >=4x); psmi m-sweep us/pair";
  for (std::size_t m : kSweep) v.detail += " " + fmt("%.3f", per_pair(rows, "psmi", m, 100));
  v.detail += "; " + fmt("%.0f s", elapsed);
  return v;
}

Verdict criterion_scaling() {
  BenchConfig cfg;
  cfg.algorithms = {Algorithm::kSmin, Algorithm::kPsmi};
  cfg.pair_count = 1000;
  cfg.m_values = kSweep;  // n = m
  cfg.dimension = 256;
  cfg.vocab_size = 10000;
  cfg.mu0 = 0.7;
  cfg.repetitions = 5;
  const auto rows = run_bench(cfg);
  std::vector<double> mn, n, smin, psmi;
  for (std::size_t m : kSweep) {
    mn.push_back(double(m * m));
    n.push_back(double(m));
    smin.push_back(per_pair(rows, "smin", m, m));
    psmi.push_back(per_pair(rows, "psmi", m, m));
  }
  const double s1 = loglog_slope(mn, smin), s2 = loglog_slope(n, psmi);
  Verdict v;
  v.pass = std::abs(s1 - kSminSlope) <= kSminSlopeTol && std::abs(s2 - kPsmiSlope) <= kPsmiSlopeTol;
  v.detail = "smin vs m*n slope " + fmt("%.3f", s1) + " (1 +- 0.15), psmi vs n slope " + fmt("%.3f", s2) +
             " (1 +- 0.2), sweep m = n = 20..100";
  return v;
}

Verdict criterion_hit_rate() {
  GeneratorConfig g;  // K = 1024, 1000 images, seed 7
  const Dataset ds = generate_synthetic(g);
  HitRateConfig cfg;
  cfg.query_count = 100;
  cfg.algorithms = {Algorithm::kPsmi, Algorithm::kBaseline};
  const auto rows = evaluate_hit_rate(ds, cfg);
  std::vector<double> psmi;
  std::string baseline;
  for (const auto& r : rows) {
    if (r.algo == "psmi") psmi.push_back(r.hit_rate);
    if (r.algo == "baseline") baseline += " " + fmt("%.2f", r.hit_rate);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < psmi.size(); ++i) monotone &= psmi[i] <= psmi[i - 1];
  Verdict v;
  v.pass = psmi.size() == 5 && psmi[0] == 1.0 && psmi[1] >= kHitRateAtTenth && monotone;
  v.detail = "psmi hit rate over rho {0,0.1,0.2,0.4,0.8}:";
  for (double h : psmi) v.detail += " " + fmt("%.2f", h);
  v.detail += "; baseline" + baseline;
  return v;
}

template <class F>
bool throws_error(F&& f) {
  try {
    f();
  } catch (const Error&) {
    return true;
  }
  return false;
}

Verdict criterion_serialization() {
  const fs::path dir = fs::temp_directory_path() / ("bovw_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Rng rng(808);
  std::size_t round_trip_bad = 0, silent_corruption = 0, corruptions = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng.uniform_index(64), d = 1 + rng.uniform_index(16);
    const Vocabulary vocab = clustered_vocabulary(k, d, 9000 + t);
    const auto index = build_psmi_index(vocab, SimilarityThreshold(0.95 * rng.uniform01()));
    const fs::path ip = dir / "index.bin";
    save_psmi(index, ip);
    const auto loaded = load_psmi(ip, vocab);
    round_trip_bad += !(loaded == index) || serialize_psmi(loaded) != serialize_psmi(index);

    const auto bytes = serialize_psmi(index);
    for (int c = 0; c < 5; ++c) {
      auto bad = bytes;
      bad[rng.uniform_index(bad.size())] ^= static_cast<unsigned char>(1 + rng.uniform_index(255));
      ++corruptions;
      silent_corruption += !throws_error([&] { deserialize_psmi(bad); });
      const std::size_t cut = rng.uniform_index(bytes.size());
      ++corruptions;
      silent_corruption += !throws_error([&] { deserialize_psmi(std::span(bytes).first(cut)); });
    }

    Dataset ds;
    ds.vocab = vocab;
    const std::size_t images = 1 + rng.uniform_index(20);
    for (std::size_t i = 0; i < images; ++i) {
      ds.images.push_back(bovw::testing::random_vocab_image(vocab, 1 + rng.uniform_index(10), rng,
                                                             "img" + std::to_string(i)));
    }
    for (std::size_t i = 1; i < images; i += 3) ds.duplicate_of["img" + std::to_string(i)] = "img0";
    save_vocabulary(vocab, dir / "v.jsonl");
    save_images(ds, dir / "i.jsonl");
    const Vocabulary v2 = load_vocabulary(dir / "v.jsonl");
    Dataset d2 = load_images(dir / "i.jsonl", &v2);
    d2.vocab = v2;
    round_trip_bad += !(v2 == vocab) || !(d2 == ds);

    // Cut a record short of its closing brace.
    std::ifstream in(dir / "i.jsonl", std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    std::vector<std::size_t> starts{0};
    for (std::size_t p = 0; p + 1 < text.size(); ++p) {
      if (text[p] == '\n') starts.push_back(p + 1);
    }
    const std::size_t line = rng.uniform_index(starts.size());
    const std::size_t end = text.find('\n', starts[line]);
    const std::size_t cut = starts[line] + 1 + rng.uniform_index(end - starts[line] - 1);
    std::ofstream(dir / "cut.jsonl", std::ios::binary) << text.substr(0, cut);
    ++corruptions;
    silent_corruption += !throws_error([&] { load_images(dir / "cut.jsonl", &v2); });
  }
  fs::remove_all(dir);
  Verdict v;
  v.pass = round_trip_bad == 0 && silent_corruption == 0;
  v.detail = "100 indexes and 100 datasets, " + std::to_string(round_trip_bad) + " round-trip differences, " +
             std::to_string(silent_corruption) + "/" + std::to_string(corruptions) + " corruptions accepted";
  return v;
}

// Optimal weighted path length: repeatedly merge the two smallest weights;
// the total of all merged weights equals sum of frequency * depth.
std::uint64_t heap_huffman_cost(const std::vector<std::uint64_t>& f) {
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> heap(f.begin(), f.end());
  std::uint64_t cost = 0;
  while (heap.size() > 1) {
    const auto x = heap.top();
    heap.pop();
    const auto y = heap.top();
    heap.pop();
    cost += x + y;
    heap.push(x + y);
  }
  return cost;
}

Verdict criterion_huffman() {
  Rng rng(909);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> f(1 + rng.uniform_index(64));
    for (auto& x : f) x = rng.uniform_index(t % 3 == 0 ? 4 : 100000);
    const HuffmanTree tree(f);
    std::uint64_t by_depth = 0;
    for (WordId w = 0; w < f.size(); ++w) by_depth += f[w] * tree.depth(w);
    bad += by_depth != heap_huffman_cost(f) || tree.weighted_path_length() != by_depth;
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = "100 frequency sets with K <= 64, " + std::to_string(bad) + " differ from the reference cost";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int c) { return selected.empty() || selected.contains(c); };

  int failures = 0;
  auto report = [&](int number, const char* name, const std::function<Verdict()>& run) {
    if (!wanted(number)) return;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s  criterion %d  %s: %s\n", v.pass ? "PASS" : "FAIL", number, name, v.detail.c_str());
    std::fflush(stdout);
  };

  std::optional<Corpus> corpus;
  double corpus_s = 0.0;
  if (wanted(1) || wanted(2)) {
    const auto t0 = Clock::now();
    corpus.emplace(build_corpus());
    corpus_s = seconds_since(t0);
  }
  report(1, "algorithm equivalence", [&] { return criterion_equivalence(*corpus, corpus_s); });
  report(2, "brute-force oracle", [&] { return criterion_oracle(*corpus); });
  report(3, "similarity spot values", criterion_spot_values);
  report(4, "range and monotonicity", criterion_range_monotonicity);
  report(5, "performance ordering", criterion_performance);
  report(6, "scaling fits", criterion_scaling);
  report(7, "hit-rate trend", criterion_hit_rate);
  report(8, "serialization", criterion_serialization);
  report(9, "huffman optimality", criterion_huffman);
  return failures == 0 ? 0 : 1;
}

#include "bovw/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bovw/algorithm.hpp"
#include "bovw/bench.hpp"
#include "bovw/dataset.hpp"
#include "bovw/errors.hpp"
#include "bovw/hitrate.hpp"
#include "bovw/kmeans.hpp"
#include "bovw/psmi.hpp"
#include "bovw/psmi_io.hpp"
#include "bovw/synthetic.hpp"
#include "bovw/tfidf.hpp"

namespace bovw {

namespace {

struct Globals {
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  std::string csv;
};

// CSV goes to --csv when given, otherwise to stdout.
template <typename Writer>
void emit_csv(const Globals& g, std::ostream& out, Writer&& write) {
  if (g.csv.empty()) {
    write(out);
    return;
  }
  std::ofstream file(g.csv, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + g.csv);
  write(file);
  if (!file) throw ValidationError("failed writing " + g.csv);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bag-of-visual-words image similarity"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--csv", g.csv, "Write CSV output to this file instead of stdout");

  std::function<void()> action;

  // gen
  GeneratorConfig gen;
  std::string gen_vocab, gen_images;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic vocabulary and image set");
  cmd_gen->add_option("--out-vocab", gen_vocab)->required();
  cmd_gen->add_option("--out-images", gen_images)->required();
  cmd_gen->add_option("--vocab-size,-K", gen.vocab_size)->capture_default_str();
  cmd_gen->add_option("--dim,-d", gen.dimension)->capture_default_str();
  cmd_gen->add_option("--images", gen.image_count)->capture_default_str();
  cmd_gen->add_option("--words,-m", gen.words_per_image)->capture_default_str();
  cmd_gen->add_option("--zipf", gen.zipf_exponent)->capture_default_str();
  cmd_gen->add_option("--dup-fraction", gen.duplicate_fraction)->capture_default_str();
  cmd_gen->add_option("--rho", gen.perturbation, "Fraction of words replaced in duplicates")->capture_default_str();
  cmd_gen->callback([&] {
    action = [&] {
      gen.seed = g.seed;
      const Dataset ds = generate_synthetic(gen);
      save_vocabulary(*ds.vocab, gen_vocab);
      save_images(ds, gen_images);
      out << "generated " << ds.images.size() << " images (" << ds.duplicate_of.size() << " duplicates) over "
          << ds.vocab->size() << " words of dimension " << ds.vocab->dimension() << '\n';
    };
  });

  // build-vocab
  std::string bv_vectors, bv_counts, bv_out, bv_images;
  auto* cmd_bv = app.add_subcommand("build-vocab", "Build a vocabulary from raw word vectors");
  cmd_bv->add_option("--vectors", bv_vectors, "Raw vectors, one {\"vec\":[...]} per line")->required();
  cmd_bv->add_option("--counts", bv_counts, "Images with word counts; adds tf-idf images and frequencies");
  cmd_bv->add_option("--out", bv_out)->required();
  cmd_bv->add_option("--out-images", bv_images, "Where to write the tf-idf weighted images");
  cmd_bv->callback([&] {
    action = [&] {
      if (!bv_counts.empty() && bv_images.empty()) throw PreconditionError("--counts needs --out-images");
      Vocabulary vocab = load_raw_vectors(bv_vectors);
      std::size_t images = 0;
      if (!bv_counts.empty()) {
        const auto counted = load_counted_images(bv_counts);
        Dataset ds = tfidf_weights(counted, vocab);
        // one weighted word per (image, id), so frequency is document frequency
        vocab = with_frequencies(vocab, ds);
        ds.vocab = vocab;
        save_images(ds, bv_images);
        images = ds.images.size();
      }
      save_vocabulary(vocab, bv_out);
      out << "vocabulary of " << vocab.size() << " words, dimension " << vocab.dimension();
      if (!bv_counts.empty()) out << "; " << images << " tf-idf weighted images";
      out << '\n';
    };
  });

  // quantize
  std::string q_features, q_vocab, q_images;
  KMeansOptions q_opts;
  auto* cmd_q = app.add_subcommand("quantize", "Cluster raw image features into a vocabulary");
  cmd_q->add_option("--features", q_features)->required();
  cmd_q->add_option("-K,--vocab-size", q_opts.k)->required();
  cmd_q->add_option("--max-iterations", q_opts.max_iterations)->capture_default_str();
  cmd_q->add_option("--out-vocab", q_vocab)->required();
  cmd_q->add_option("--out-images", q_images)->required();
  cmd_q->callback([&] {
    action = [&] {
      q_opts.seed = g.seed;
      const auto features = load_features(q_features);
      const KMeansResult r = kmeans_quantize(features, q_opts);
      save_vocabulary(r.vocab, q_vocab);
      save_images(r.dataset, q_images);
      out << "quantized " << r.dataset.images.size() << " images into " << r.vocab.size() << " words in "
          << r.iterations << " iterations, mean cosine " << fixed6(r.objective_history.back()) << '\n';
    };
  });

  // build-psmi
  std::string bp_vocab, bp_out;
  double bp_mu0 = 0.7;
  auto* cmd_bp = app.add_subcommand("build-psmi", "Precompute the similar-word index of a vocabulary");
  cmd_bp->add_option("--vocab", bp_vocab)->required();
  cmd_bp->add_option("--mu0", bp_mu0, "Build threshold")->capture_default_str();
  cmd_bp->add_option("--out", bp_out)->required();
  cmd_bp->callback([&] {
    action = [&] {
      const Vocabulary vocab = load_vocabulary(bp_vocab);
      const PsimIndex index = build_psmi_index(vocab, SimilarityThreshold(bp_mu0), g.threads);
      save_psmi(index, bp_out);
      out << "indexed " << index.size() << " words, " << index.total_entries() << " list entries, mu0 "
          << fixed6(bp_mu0) << '\n';
    };
  });

  // sim
  std::string s_algo = "smin", s_vocab, s_images, s_images_b, s_a, s_b, s_index;
  double s_mu0 = 0.7;
  auto* cmd_sim = app.add_subcommand("sim", "Similarity of two images");
  cmd_sim->add_option("--algo", s_algo, "smin, smii, psmi or baseline")->capture_default_str();
  cmd_sim->add_option("--vocab", s_vocab, "Vocabulary resolving word ids");
  cmd_sim->add_option("--images", s_images, "Image file holding A (and B unless --images-b)")->required();
  cmd_sim->add_option("--images-b", s_images_b, "Image file holding B");
  cmd_sim->add_option("--a", s_a, "Image id of A")->required();
  cmd_sim->add_option("--b", s_b, "Image id of B")->required();
  cmd_sim->add_option("--mu0", s_mu0)->capture_default_str();
  cmd_sim->add_option("--index", s_index, "PSMI index file");
  cmd_sim->callback([&] {
    action = [&] {
      const Algorithm algo = parse_algorithm(s_algo);
      if (algo == Algorithm::kPsmi && s_index.empty()) throw PreconditionError("psmi needs --index");
      const SimilarityThreshold mu0(s_mu0);
      std::optional<Vocabulary> vocab;
      if (!s_vocab.empty()) vocab.emplace(load_vocabulary(s_vocab));
      const Vocabulary* vp = vocab ? &*vocab : nullptr;
      const Dataset da = load_images(s_images, vp);
      const Dataset db = s_images_b.empty() ? Dataset{} : load_images(s_images_b, vp);
      const ImageObject& a = da.find(s_a);
      const ImageObject& b = s_images_b.empty() ? da.find(s_b) : db.find(s_b);
      std::optional<PsimIndex> index;
      if (algo == Algorithm::kPsmi) index.emplace(vocab ? load_psmi(s_index, *vocab) : load_psmi(s_index));
      const Scorer scorer(algo, mu0, index ? &*index : nullptr);
      out << fixed6(scorer(a, b)) << '\n';
    };
  });

  // bench
  BenchConfig bc;
  std::string bc_algos = "smin,smii,psmi,baseline";
  auto* cmd_bench = app.add_subcommand("bench", "Time the similarity algorithms on random image pairs");
  cmd_bench->add_option("--algos", bc_algos)->capture_default_str();
  cmd_bench->add_option("--pairs", bc.pair_count, "Pairs per sweep point")->capture_default_str();
  cmd_bench->add_option("-m", bc.m_values, "Words of A (repeatable list)")->delimiter(',');
  cmd_bench->add_option("-n", bc.n_values, "Words of B (list; default n = m)")->delimiter(',');
  cmd_bench->add_option("--dim,-d", bc.dimension)->capture_default_str();
  cmd_bench->add_option("--vocab-size,-K", bc.vocab_size)->capture_default_str();
  cmd_bench->add_option("--mu0", bc.mu0)->capture_default_str();
  cmd_bench->add_option("--reps", bc.repetitions)->capture_default_str();
  cmd_bench->callback([&] {
    action = [&] {
      bc.algorithms = parse_algorithms(bc_algos);
      bc.seed = g.seed;
      bc.threads = g.threads;
      const auto rows = run_bench(bc);
      emit_csv(g, out, [&](std::ostream& o) { write_bench_csv(o, rows); });
      if (!g.csv.empty()) out << "wrote " << rows.size() << " rows to " << g.csv << '\n';
    };
  });

  // eval-hitrate
  HitRateConfig hc;
  std::string h_images, h_vocab, h_algos = "psmi,baseline";
  auto* cmd_hr = app.add_subcommand("eval-hitrate", "Near-duplicate retrieval hit rate");
  cmd_hr->add_option("--images", h_images, "Dataset with dup_of ground truth")->required();
  cmd_hr->add_option("--vocab", h_vocab)->required();
  cmd_hr->add_option("--queries", hc.query_count)->capture_default_str();
  cmd_hr->add_option("--rho", hc.rho_grid, "Perturbation grid")->delimiter(',');
  cmd_hr->add_option("--top-k", hc.top_k)->capture_default_str();
  cmd_hr->add_option("--mu0", hc.mu0)->capture_default_str();
  cmd_hr->add_option("--algos", h_algos)->capture_default_str();
  cmd_hr->callback([&] {
    action = [&] {
      hc.algorithms = parse_algorithms(h_algos);
      hc.seed = g.seed;
      hc.threads = g.threads;
      Vocabulary vocab = load_vocabulary(h_vocab);
      Dataset ds = load_images(h_images, &vocab);
      ds.vocab = std::move(vocab);
      const auto rows = evaluate_hit_rate(ds, hc);
      emit_csv(g, out, [&](std::ostream& o) { write_hitrate_csv(o, rows); });
      if (!g.csv.empty()) out << "wrote " << rows.size() << " rows to " << g.csv << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    action();
    return 0;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bovw

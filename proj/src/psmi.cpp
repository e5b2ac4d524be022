#include "bovw/psmi.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "bovw/errors.hpp"
#include "bovw/parallel.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

namespace {

// Per-thread membership bitset over word ids, with the smallest position of
// each member. Callers erase every id they insert before the next use, so
// the bitset is all zero between calls.
class PresenceTable {
 public:
  void reserve(std::size_t vocab_size) {
    if (first_.size() < vocab_size) {
      bits_.assign((vocab_size + 63) / 64, 0);
      first_.resize(vocab_size);
    }
  }
  // Returns the smallest position holding `id` so far.
  std::uint32_t insert(WordId id, std::uint32_t position) {
    std::uint64_t& word = bits_[id >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (id & 63);
    if (word & mask) return first_[id];
    word |= mask;
    first_[id] = position;
    return position;
  }
  bool contains(WordId id) const { return bits_[id >> 6] >> (id & 63) & 1; }
  std::uint32_t first(WordId id) const { return first_[id]; }
  void erase(WordId id) { bits_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

 private:
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> first_;
};

bool list_order(const PsimEntry& x, const PsimEntry& y) {
  if (x.sim != y.sim) return x.sim > y.sim;
  return x.word_id < y.word_id;
}

void check_list(WordId owner, std::span<const PsimEntry> list, std::size_t k, double floor,
                std::vector<std::size_t>& stamp) {
  const std::string where = "psmi list of word " + std::to_string(owner);
  if (list.empty() || list.front().word_id != owner || list.front().sim != 1.0) {
    throw FormatError(where + " does not start with its self-entry");
  }
  stamp[owner] = owner + 1;
  for (std::size_t i = 1; i < list.size(); ++i) {
    const PsimEntry& e = list[i];
    if (e.word_id >= k) throw FormatError(where + " references unknown word");
    if (!(e.sim > floor && e.sim <= 1.0)) throw FormatError(where + " has similarity out of range");
    if (stamp[e.word_id] == owner + 1) throw FormatError(where + " repeats a word");
    stamp[e.word_id] = owner + 1;
    if (i > 1 && !list_order(list[i - 1], e)) throw FormatError(where + " is not sorted");
  }
}

}  // namespace

PsimIndex::PsimIndex(std::size_t dimension, SimilarityThreshold build_threshold,
                     std::uint64_t vocab_checksum, std::vector<std::uint64_t> frequencies,
                     std::vector<std::vector<PsimEntry>> lists)
    : dimension_(dimension),
      build_threshold_(build_threshold),
      vocab_checksum_(vocab_checksum),
      frequencies_(std::move(frequencies)),
      tree_(frequencies_.empty() ? throw FormatError("psmi index has no words")
                                 : HuffmanTree(frequencies_)) {
  const std::size_t k = frequencies_.size();
  if (dimension_ == 0) throw FormatError("psmi index has dimension 0");
  if (lists.size() != k) throw FormatError("psmi index list count differs from word count");

  std::vector<std::size_t> stamp(k, 0);
  offsets_.reserve(k + 1);
  offsets_.push_back(0);
  std::size_t total = 0;
  for (const auto& l : lists) total += l.size();
  entries_.reserve(total);
  for (std::size_t v = 0; v < k; ++v) {
    check_list(static_cast<WordId>(v), lists[v], k, build_threshold_.value(), stamp);
    entries_.insert(entries_.end(), lists[v].begin(), lists[v].end());
    offsets_.push_back(entries_.size());
  }
}

PsimList PsimIndex::huffman_search(WordId id) const {
  const HuffmanNode& leaf = tree_.nodes()[tree_.leaf(id)];
  const WordId w = *leaf.word;
  return {entries_.data() + offsets_[w], offsets_[w + 1] - offsets_[w]};
}

bool operator==(const PsimIndex& x, const PsimIndex& y) {
  return x.dimension_ == y.dimension_ && x.build_threshold_ == y.build_threshold_ &&
         x.vocab_checksum_ == y.vocab_checksum_ && x.frequencies_ == y.frequencies_ &&
         x.offsets_ == y.offsets_ && x.entries_ == y.entries_;
}

PsimIndex build_psmi_index(const Vocabulary& vocab, SimilarityThreshold build_threshold,
                           std::size_t threads) {
  const std::size_t k = vocab.size();
  const double floor = build_threshold.value();
  std::vector<double> norms(k);
  for (std::size_t v = 0; v < k; ++v) norms[v] = norm(*vocab.entries()[v].vector);

  // Each unordered pair is evaluated once; cosine_with_norms is symmetric bit
  // for bit, so the value serves both lists. Task t owns rows t and k-1-t to
  // even out the triangular workload.
  using Hit = std::tuple<WordId, WordId, double>;
  const std::size_t tasks = (k + 1) / 2;
  std::vector<std::vector<Hit>> found(std::max<std::size_t>(1, threads));
  parallel_slices(tasks, threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
    auto& out = found[worker];
    auto scan_row = [&](std::size_t v) {
      const auto& vv = *vocab.entries()[v].vector;
      for (std::size_t u = v + 1; u < k; ++u) {
        const double c = cosine_with_norms(vv, norms[v], *vocab.entries()[u].vector, norms[u]);
        if (c > floor) out.emplace_back(static_cast<WordId>(v), static_cast<WordId>(u), c);
      }
    };
    for (std::size_t t = begin; t < end; ++t) {
      scan_row(t);
      if (k - 1 - t != t) scan_row(k - 1 - t);
    }
  });

  std::vector<std::vector<PsimEntry>> lists(k);
  for (std::size_t v = 0; v < k; ++v) lists[v].push_back(PsimEntry{static_cast<WordId>(v), 1.0});
  for (const auto& part : found) {
    for (const auto& [v, u, c] : part) {
      lists[v].push_back(PsimEntry{u, c});
      lists[u].push_back(PsimEntry{v, c});
    }
  }
  for (auto& l : lists) std::sort(l.begin() + 1, l.end(), list_order);

  return PsimIndex(vocab.dimension(), build_threshold, vocab.checksum(), vocab.frequencies(),
                   std::move(lists));
}

MatchOutcome psmi_match(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                        const PsimIndex& index) {
  if (a.empty() || b.empty()) throw DomainError("psmi_match: empty image");
  if (mu0 < index.build_threshold()) {
    throw PreconditionError("psmi_match: threshold " + std::to_string(mu0.value()) +
                            " is below the index build threshold " +
                            std::to_string(index.build_threshold().value()));
  }
  auto checked_id = [&](const ImageObject& image, const VisualWord& w) {
    if (!w.word_id) throw PreconditionError("psmi_match: word of '" + image.image_id + "' has no vocabulary id");
    if (*w.word_id >= index.size()) {
      throw NotFoundError("psmi_match: word id " + std::to_string(*w.word_id) + " not indexed");
    }
    return *w.word_id;
  };

  // Only the first A position of each id is scored; repeats copy it.
  struct Slot {
    double best;
    std::uint32_t partner;
    std::uint32_t first;
  };
  thread_local PresenceTable present;
  thread_local std::vector<Slot> slots;
  present.reserve(index.size());
  slots.resize(a.size());
  // Clears the inserted ids on every exit path.
  struct Eraser {
    PresenceTable& table;
    const ImageObject& image;
    std::size_t count = 0;
    ~Eraser() {
      for (std::size_t i = 0; i < count; ++i) table.erase(*image.words[i].word_id);
    }
  } eraser{present, a};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const WordId id = checked_id(a, a.words[i]);
    slots[i] = Slot{-1.0, 0, present.insert(id, static_cast<std::uint32_t>(i))};
    eraser.count = i + 1;
  }

  // Lists are symmetric: u is listed under v with the same value as v under
  // u. Scanning the list of each B word therefore visits cosine(a_i, b_j)
  // for every pair above the build threshold. B is walked in order and only
  // a strictly larger value replaces the current best, so ties keep the
  // smallest B position, as in the naive scan.
  const double floor = mu0.value();
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (const PsimEntry& e : index.huffman_search(checked_id(b, b.words[j]))) {
      if (e.sim <= floor) break;
      if (!present.contains(e.word_id)) continue;
      Slot& s = slots[present.first(e.word_id)];
      if (e.sim > s.best) {
        s.best = e.sim;
        s.partner = static_cast<std::uint32_t>(j);
      }
    }
  }

  MatchBuilder builder(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Slot& s = slots[slots[i].first];
    if (s.best > floor) {
      builder.matched(s.partner, s.best);
    } else {
      builder.unmatched();
    }
  }
  return std::move(builder).finish();
}

double psmi_similarity(const ImageObject& a, const ImageObject& b, SimilarityThreshold mu0,
                       const PsimIndex& index) {
  return image_similarity(a, b, psmi_match(a, b, mu0, index));
}

}  // namespace bovw

#include "bovw/psmi_io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "bovw/checksum.hpp"
#include "bovw/errors.hpp"

namespace bovw {

namespace {

constexpr unsigned char kMagic[4] = {'P', 'S', 'M', 'I'};

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::span<const unsigned char> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw FormatError("psmi: truncated file");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint64_t uint(std::size_t width) {
    const auto b = take(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<unsigned char> serialize_psmi(const PsimIndex& index) {
  std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, kPsmiFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(index.size()));
  put_u32(out, static_cast<std::uint32_t>(index.dimension()));
  put_f64(out, index.build_threshold().value());
  put_u64(out, index.vocab_checksum());
  for (std::size_t v = 0; v < index.size(); ++v) {
    const PsimList list = index.huffman_search(static_cast<WordId>(v));
    put_u64(out, index.frequencies()[v]);
    put_u32(out, static_cast<std::uint32_t>(list.size()));
    for (const PsimEntry& e : list) {
      put_u32(out, e.word_id);
      put_f64(out, e.sim);
    }
  }
  put_u64(out, fnv1a(out));
  return out;
}

PsimIndex deserialize_psmi(std::span<const unsigned char> bytes) {
  constexpr std::size_t kTrailer = 8;
  if (bytes.size() < sizeof kMagic + kTrailer) throw FormatError("psmi: truncated file");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) throw FormatError("psmi: bad magic");

  const auto body = bytes.first(bytes.size() - kTrailer);
  Reader trailer(bytes.last(kTrailer));
  if (trailer.u64() != fnv1a(body)) throw FormatError("psmi: checksum mismatch");

  Reader r(body);
  r.take(sizeof kMagic);
  const std::uint32_t version = r.u32();
  if (version != kPsmiFormatVersion) throw FormatError("psmi: unsupported version " + std::to_string(version));
  const std::uint32_t k = r.u32();
  const std::uint32_t d = r.u32();
  const double mu0 = r.f64();
  const std::uint64_t checksum = r.u64();
  if (k == 0) throw FormatError("psmi: empty index");
  if (!(mu0 >= 0.0 && mu0 < 1.0)) throw FormatError("psmi: build threshold out of range");

  constexpr std::size_t kEntryBytes = 12;
  std::vector<std::uint64_t> frequencies(k);
  std::vector<std::vector<PsimEntry>> lists(k);
  for (std::uint32_t v = 0; v < k; ++v) {
    frequencies[v] = r.u64();
    const std::uint32_t count = r.u32();
    if (count > r.remaining() / kEntryBytes) throw FormatError("psmi: truncated file");
    lists[v].reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::uint32_t id = r.u32();
      const double sim = r.f64();
      lists[v].push_back(PsimEntry{id, sim});
    }
  }
  if (r.remaining() != 0) throw FormatError("psmi: trailing bytes");
  return PsimIndex(d, SimilarityThreshold(mu0), checksum, std::move(frequencies), std::move(lists));
}

void save_psmi(const PsimIndex& index, const std::filesystem::path& path) {
  const auto bytes = serialize_psmi(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("failed writing " + path.string());
}

PsimIndex load_psmi(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_psmi(bytes);
}

PsimIndex load_psmi(const std::filesystem::path& path, const Vocabulary& vocab) {
  PsimIndex index = load_psmi(path);
  if (index.vocab_checksum() != vocab.checksum() || index.size() != vocab.size() ||
      index.dimension() != vocab.dimension()) {
    throw CompatibilityError("psmi index " + path.string() + " was built over a different vocabulary");
  }
  return index;
}

}  // namespace bovw

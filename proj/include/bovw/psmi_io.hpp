#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bovw/core.hpp"
#include "bovw/psmi.hpp"

namespace bovw {

inline constexpr std::uint32_t kPsmiFormatVersion = 1;

// Binary layout, all integers little-endian, floats IEEE-754 binary64:
//
//   "PSMI"  u32 version  u32 K  u32 d  f64 mu0_build  u64 vocab_checksum
//   K times, by ascending word id:
//       u64 frequency  u32 entry_count  entry_count x (u32 word_id, f64 sim)
//   u64 FNV-1a of every preceding byte
//
// The Huffman tree is not stored; it is rebuilt from the frequencies.
std::vector<unsigned char> serialize_psmi(const PsimIndex& index);

// Throws FormatError on bad magic, version, truncation, trailing bytes,
// checksum mismatch or broken list invariants.
PsimIndex deserialize_psmi(std::span<const unsigned char> bytes);

void save_psmi(const PsimIndex& index, const std::filesystem::path& path);

PsimIndex load_psmi(const std::filesystem::path& path);

// Also throws CompatibilityError when the index was built over another
// vocabulary.
PsimIndex load_psmi(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace bovw

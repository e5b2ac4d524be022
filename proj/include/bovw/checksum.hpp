#pragma once

#include <cstdint>
#include <cstring>
#include <span>

namespace bovw {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// 64-bit FNV-1a, resumable through `state`.
inline std::uint64_t fnv1a(std::span<const unsigned char> bytes,
                           std::uint64_t state = kFnvOffset) noexcept {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

// Little-endian appenders shared by the checksum and the binary index format.
template <class Out>
void put_u32(Out& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

template <class Out>
void put_u64(Out& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

template <class Out>
void put_f64(Out& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(out, bits);
}

}  // namespace bovw

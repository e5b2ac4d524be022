#pragma once

#include <span>

namespace bovw {

// Inner product with a fixed summation order (four interleaved lanes,
// combined pairwise). Every cosine in the library goes through this routine,
// so the naive, temp-index and precomputed paths produce bit-identical values.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

double norm(std::span<const double> a) noexcept;

// Cosine of two vectors whose Euclidean norms are already known.
// Bit-identical vectors yield exactly 1; the result is clamped to [0, 1].
// No validation: callers guarantee equal sizes and positive norms.
double cosine_with_norms(std::span<const double> a, double norm_a,
                         std::span<const double> b, double norm_b) noexcept;

// Clamped cosine similarity. Throws ContractError on dimension mismatch and
// DomainError on a zero-norm input.
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace bovw

#include "bovw/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bovw/errors.hpp"

namespace bovw {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  const double* x = a.data();
  const double* y = b.data();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

double cosine_with_norms(std::span<const double> a, double norm_a,
                         std::span<const double> b, double norm_b) noexcept {
  const double r = dot(a, b) / (norm_a * norm_b);
  // Identical words have similarity exactly 1, whatever the rounding of r.
  if (r >= 1.0 - 1e-9 && std::equal(a.begin(), a.end(), b.begin())) return 1.0;
  return std::clamp(r, 0.0, 1.0);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("cosine: zero-norm vector");
  return cosine_with_norms(a, na, b, nb);
}

}  // namespace bovw

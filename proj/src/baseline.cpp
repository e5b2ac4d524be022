#include "bovw/baseline.hpp"

#include "bovw/errors.hpp"
#include "bovw/vector_ops.hpp"

namespace bovw {

FeatureVector mean_vector(const ImageObject& image) {
  validate_image(image);
  FeatureVector sum(image.words.front().vector->size(), 0.0);
  for (const auto& w : image.words) {
    const auto v = w.components();
    if (v.size() != sum.size()) throw ContractError("mean_vector: ragged word vectors");
    for (std::size_t j = 0; j < v.size(); ++j) sum[j] += w.weight * v[j];
  }
  return sum;
}

double mean_vector_similarity(const ImageObject& a, const ImageObject& b) {
  const FeatureVector ma = mean_vector(a);
  const FeatureVector mb = mean_vector(b);
  if (ma.size() != mb.size()) throw ContractError("mean_vector_similarity: dimension mismatch");
  const double na = norm(ma);
  const double nb = norm(mb);
  // Words cancelling out leave no direction to compare.
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return cosine_with_norms(ma, na, mb, nb);
}

}  // namespace bovw

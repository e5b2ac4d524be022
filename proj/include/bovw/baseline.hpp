#pragma once

#include "bovw/core.hpp"

namespace bovw {

// Reference point for retrieval comparisons: the cosine between the
// weight-averaged word vectors of the two images. Symmetric; no threshold.
FeatureVector mean_vector(const ImageObject& image);

double mean_vector_similarity(const ImageObject& a, const ImageObject& b);

}  // namespace bovw

#include "syncact/activations.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "syncact/errors.hpp"

namespace syncact::activations {

FilterActivationMatrix filter_activations(const FeatureMapSequence& fm) {
  const auto& shape = fm.maps.shape;
  if (shape.size() != 4) {
    throw ShapeError("feature maps must be T x C x H x W, got rank " + std::to_string(shape.size()));
  }
  const std::size_t frames = shape[0];
  const std::size_t channels = shape[1];
  const std::size_t plane = shape[2] * shape[3];
  if (frames == 0 || channels == 0 || plane == 0) throw ShapeError("feature maps have an empty axis");

  FilterActivationMatrix out{Matrix(frames, channels), false, 0};
  const double* data = fm.maps.data.data();
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double* map = data + (t * channels + c) * plane;
      out.values(t, c) = *std::max_element(map, map + plane);
    }
  }
  return out;
}

Aligned align(const FilterActivationMatrix& filters, const embedding::FbnActivations& fbns, int lag) {
  const std::size_t filter_rows = filters.values.rows();
  const std::size_t fbn_rows = fbns.values.rows();
  const std::size_t shift = static_cast<std::size_t>(std::abs(lag));
  if (shift >= std::min(filter_rows, fbn_rows)) {
    throw InputError("lag " + std::to_string(lag) + " leaves no overlap between " +
                     std::to_string(filter_rows) + " filter rows and " + std::to_string(fbn_rows) +
                     " FBN rows");
  }
  const std::size_t filter_start = lag < 0 ? shift : 0;
  const std::size_t fbn_start = lag > 0 ? shift : 0;
  const std::size_t overlap = std::min(filter_rows - filter_start, fbn_rows - fbn_start);
  if (overlap < 2) throw InputError("aligned window shorter than 2 samples");

  Aligned out;
  out.filters.values =
      embedding::znormalize(filters.values.row_slice(filter_start, overlap)).values;
  out.filters.normalized = true;
  out.filters.lag = lag;
  out.fbns.values = embedding::znormalize(fbns.values.row_slice(fbn_start, overlap)).values;
  return out;
}

}  // namespace syncact::activations

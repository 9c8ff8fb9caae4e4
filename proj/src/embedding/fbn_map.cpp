#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"

namespace syncact::embedding {

VoxelMask VoxelMask::from_volume(const Tensor& volume) {
  if (volume.rank() != 3) throw InputError("voxel mask must be a 3-D volume");
  VoxelMask mask;
  mask.dims = {volume.shape[0], volume.shape[1], volume.shape[2]};
  std::size_t flat = 0;
  for (std::size_t x = 0; x < mask.dims[0]; ++x) {
    for (std::size_t y = 0; y < mask.dims[1]; ++y) {
      for (std::size_t z = 0; z < mask.dims[2]; ++z, ++flat) {
        if (volume.data[flat] != 0.0) mask.coords.push_back({x, y, z});
      }
    }
  }
  return mask;
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw InputError("percentile of an empty set");
  if (!(p >= 0.0 && p <= 100.0)) throw InputError("percentile must lie in [0, 100]");
  std::vector<double> v(values.begin(), values.end());
  const double pos = p / 100.0 * double(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - double(lo);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
  const double lo_value = v[lo];
  if (frac == 0.0 || lo + 1 >= v.size()) return lo_value;
  const double hi_value = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
  return lo_value + frac * (hi_value - lo_value);
}

Tensor export_fbn_map(const EmbeddingModel& model, std::size_t k, const VoxelMask& mask,
                      double lo_percentile, double hi_percentile) {
  if (k >= model.encoder.cols()) {
    throw IndexError("FBN index " + std::to_string(k) + " out of range (m=" +
                     std::to_string(model.encoder.cols()) + ")");
  }
  if (mask.coords.size() != model.encoder.rows()) {
    throw InputError("mask has " + std::to_string(mask.coords.size()) + " voxels, model has " +
                     std::to_string(model.encoder.rows()));
  }
  if (!(lo_percentile >= 0.0 && lo_percentile < hi_percentile && hi_percentile <= 100.0)) {
    throw InputError("percentile band must satisfy 0 <= lo < hi <= 100");
  }
  const std::vector<double> weights = model.encoder.column(k);
  std::vector<double> magnitude(weights.size());
  std::transform(weights.begin(), weights.end(), magnitude.begin(),
                 [](double w) { return std::abs(w); });
  const double lo = percentile(magnitude, lo_percentile);
  const double hi = percentile(magnitude, hi_percentile);

  Tensor volume({mask.dims[0], mask.dims[1], mask.dims[2]});
  for (std::size_t v = 0; v < weights.size(); ++v) {
    const auto& c = mask.coords[v];
    if (c[0] >= mask.dims[0] || c[1] >= mask.dims[1] || c[2] >= mask.dims[2]) {
      throw InputError("mask coordinate for voxel " + std::to_string(v) + " is outside the volume");
    }
    if (magnitude[v] < lo || magnitude[v] > hi) continue;
    volume.data[(c[0] * mask.dims[1] + c[1]) * mask.dims[2] + c[2]] = weights[v];
  }
  return volume;
}

}  // namespace syncact::embedding

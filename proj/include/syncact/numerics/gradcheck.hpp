#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "syncact/numerics/params.hpp"

namespace syncact::numerics {

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  std::size_t coordinates_checked = 0;
};

// Compares `analytic` against central differences of `loss` for every
// coordinate of `params` (or an evenly strided subset of at most
// `max_per_param` coordinates per tensor when nonzero). Each coordinate is
// perturbed in place and restored bit-exactly.
//
// Relative error is |a − n| / max(|a|, |n|, kGradCheckFloor): below the floor
// the comparison is effectively absolute, so vanishing gradients do not turn
// rounding noise into large ratios.
inline constexpr double kGradCheckFloor = 1e-6;

GradCheckReport grad_check(const std::function<double()>& loss, const ParamList& params,
                           const ParamList& analytic, double eps = 1e-5,
                           std::size_t max_per_param = 0);

}  // namespace syncact::numerics

#pragma once

#include <cstdint>
#include <vector>

#include "syncact/matrix.hpp"
#include "syncact/numerics/params.hpp"

namespace syncact::numerics {

struct AdamHyper {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamHyper hyper;
  std::uint64_t step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;

  explicit AdamState(AdamHyper h = {}) : hyper(h) {}
};

// Bias-corrected Adam update applied in place to `params`.
//
// Moments are created on the first call to match the parameter shapes. All
// gradients are checked before anything is modified; a non-finite entry throws
// NumericError naming the offending parameter and leaves params and state
// untouched.
void adam_step(const ParamList& params, const ParamList& grads, AdamState& state);

}  // namespace syncact::numerics

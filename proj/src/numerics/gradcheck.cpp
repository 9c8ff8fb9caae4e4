#include "syncact/numerics/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "syncact/errors.hpp"

namespace syncact::numerics {

GradCheckReport grad_check(const std::function<double()>& loss, const ParamList& params,
                           const ParamList& analytic, double eps, std::size_t max_per_param) {
  if (params.size() != analytic.size()) {
    throw ShapeError("grad_check: parameter and gradient lists differ in length");
  }
  GradCheckReport report;
  for (std::size_t p = 0; p < params.size(); ++p) {
    auto values = params[p].value->data();
    auto grads = analytic[p].value->data();
    if (values.size() != grads.size()) {
      throw ShapeError("grad_check: gradient shape mismatch for " + params[p].name);
    }
    const std::size_t stride = (max_per_param == 0 || values.size() <= max_per_param)
                                   ? 1
                                   : (values.size() + max_per_param - 1) / max_per_param;
    for (std::size_t i = 0; i < values.size(); i += stride) {
      const double original = values[i];
      values[i] = original + eps;
      const double up = loss();
      values[i] = original - eps;
      const double down = loss();
      values[i] = original;

      const double numeric = (up - down) / (2.0 * eps);
      const double denom = std::max({std::abs(numeric), std::abs(grads[i]), kGradCheckFloor});
      const double rel = std::abs(numeric - grads[i]) / denom;
      ++report.coordinates_checked;
      if (rel > report.max_relative_error || std::isnan(rel)) {
        report.max_relative_error = rel;
        report.worst_param = params[p].name;
        report.worst_index = i;
      }
    }
  }
  return report;
}

}  // namespace syncact::numerics

#include "syncact/numerics/adam.hpp"

#include <cmath>
#include <string>

#include "syncact/errors.hpp"

namespace syncact::numerics {

void adam_step(const ParamList& params, const ParamList& grads, AdamState& state) {
  const auto& hp = state.hyper;
  if (!(hp.lr >= 0.0)) throw InputError("Adam learning rate must be non-negative");
  if (params.size() != grads.size()) {
    throw ShapeError("Adam: " + std::to_string(params.size()) + " parameters but " +
                     std::to_string(grads.size()) + " gradients");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].value->same_shape(*grads[i].value)) {
      throw ShapeError("Adam: gradient shape for " + params[i].name + " does not match");
    }
    if (!grads[i].value->all_finite()) {
      throw NumericError("non-finite gradient for parameter " + params[i].name);
    }
  }
  if (state.first_moment.empty()) {
    for (const auto& p : params) {
      state.first_moment.push_back(Matrix::zeros_like(*p.value));
      state.second_moment.push_back(Matrix::zeros_like(*p.value));
    }
  } else if (state.first_moment.size() != params.size()) {
    throw ShapeError("Adam state was created for a different parameter list");
  }

  ++state.step;
  const double correction1 = 1.0 - std::pow(hp.beta1, double(state.step));
  const double correction2 = 1.0 - std::pow(hp.beta2, double(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto value = params[i].value->data();
    auto grad = grads[i].value->data();
    auto m = state.first_moment[i].data();
    auto v = state.second_moment[i].data();
    if (m.size() != value.size()) {
      throw ShapeError("Adam moment shape for " + params[i].name + " does not match");
    }
    for (std::size_t j = 0; j < value.size(); ++j) {
      m[j] = hp.beta1 * m[j] + (1.0 - hp.beta1) * grad[j];
      v[j] = hp.beta2 * v[j] + (1.0 - hp.beta2) * grad[j] * grad[j];
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      value[j] -= hp.lr * m_hat / (std::sqrt(v_hat) + hp.eps);
    }
  }
}

}  // namespace syncact::numerics

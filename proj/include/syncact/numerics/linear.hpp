#pragma once

#include "syncact/matrix.hpp"

namespace syncact::numerics {

// Y = X·W for X: t×n, W: n×m.
Matrix forward_linear(const Matrix& x, const Matrix& w);

struct LinearGrad {
  Matrix input;   // dL/dX = dY·Wᵀ
  Matrix weight;  // dL/dW = Xᵀ·dY
};

LinearGrad backward_linear(const Matrix& x, const Matrix& w, const Matrix& grad_out);

}  // namespace syncact::numerics

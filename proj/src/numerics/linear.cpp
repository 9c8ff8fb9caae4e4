#include "syncact/numerics/linear.hpp"

#include "syncact/errors.hpp"

namespace syncact::numerics {

Matrix forward_linear(const Matrix& x, const Matrix& w) { return matmul(x, w); }

LinearGrad backward_linear(const Matrix& x, const Matrix& w, const Matrix& grad_out) {
  if (grad_out.rows() != x.rows() || grad_out.cols() != w.cols()) {
    throw ShapeError("backward_linear: output gradient shape does not match forward output");
  }
  return {matmul_nt(grad_out, w), matmul_tn(x, grad_out)};
}

}  // namespace syncact::numerics

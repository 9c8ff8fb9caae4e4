#include "syncact/tensor.hpp"

#include <string>

#include "syncact/errors.hpp"

namespace syncact {

std::size_t Tensor::element_count(const std::vector<std::size_t>& shape) {
  std::size_t count = 1;
  for (auto d : shape) count *= d;
  return count;
}

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
  if (data.size() != element_count(shape)) {
    throw ShapeError("tensor data length " + std::to_string(data.size()) +
                     " does not match its shape");
  }
}

Tensor::Tensor(std::vector<std::size_t> s) : shape(std::move(s)), data(element_count(shape)) {}

Tensor Tensor::from_matrix(const Matrix& m) {
  return Tensor({m.rows(), m.cols()}, std::vector<double>(m.data().begin(), m.data().end()));
}

Matrix Tensor::to_matrix() const {
  if (shape.size() != 2) {
    throw ShapeError("expected a 2-D tensor, got rank " + std::to_string(shape.size()));
  }
  return Matrix(shape[0], shape[1], data);
}

}  // namespace syncact

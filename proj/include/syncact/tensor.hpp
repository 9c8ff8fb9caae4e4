#pragma once

#include <cstddef>
#include <vector>

#include "syncact/matrix.hpp"

namespace syncact {

// N-dimensional row-major array of doubles. An empty shape is a scalar.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static std::size_t element_count(const std::vector<std::size_t>& shape);

  Tensor() = default;
  Tensor(std::vector<std::size_t> s, std::vector<double> d);
  explicit Tensor(std::vector<std::size_t> s);

  std::size_t rank() const { return shape.size(); }

  static Tensor from_matrix(const Matrix& m);
  // Throws ShapeError unless rank is 2.
  Matrix to_matrix() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace syncact

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace syncact {

// Dense row-major matrix of doubles. Bias vectors are stored as 1×k.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix zeros_like(const Matrix& other) { return Matrix(other.rows_, other.cols_); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> values);

  // Rows [first, first + count).
  Matrix row_slice(std::size_t first, std::size_t count) const;
  // Columns [first, first + count).
  Matrix col_slice(std::size_t first, std::size_t count) const;
  void set_col_slice(std::size_t first, const Matrix& block);

  Matrix transposed() const;
  void fill(double value);
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double scale);

// a·b
Matrix matmul(const Matrix& a, const Matrix& b);
// aᵀ·b
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// a·bᵀ
Matrix matmul_nt(const Matrix& a, const Matrix& b);

// Elementwise product.
Matrix hadamard(const Matrix& a, const Matrix& b);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace syncact

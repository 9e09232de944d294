#pragma once

#include <cstddef>
#include <vector>

namespace biadmm {

/// Dense row-major matrix of doubles. Small and unfancy; every dimension in
/// this toolkit is a few hundred at most, so plain loops are fast enough.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  void fill(double value);
  bool all_finite() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out = a * b. out must not alias a or b; it is resized as needed.
void matmul_into(const Matrix& a, const Matrix& b, Matrix& out);
// out = a^T * b
void matmul_tn_into(const Matrix& a, const Matrix& b, Matrix& out);
// out = a * b^T
void matmul_nt_into(const Matrix& a, const Matrix& b, Matrix& out);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
void transpose_into(const Matrix& m, Matrix& out);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace biadmm

#include "biadmm/matrix.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace biadmm {

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

void Matrix::fill(double value) {
  for (double& x : data_) x = value;
}

bool Matrix::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void matmul_into(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
  out = Matrix(n, p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* oi = out.row(i);
    const double* ai = a.row(i);
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b.row(l);
      for (std::size_t j = 0; j < p; ++j) oi[j] += ail * bl[j];
    }
  }
}

void matmul_tn_into(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matmul_tn: inner dimensions differ");
  const std::size_t n = a.cols(), k = a.rows(), p = b.cols();
  out = Matrix(n, p, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    const double* al = a.row(l);
    const double* bl = b.row(l);
    for (std::size_t i = 0; i < n; ++i) {
      double* oi = out.row(i);
      const double ali = al[i];
      for (std::size_t j = 0; j < p; ++j) oi[j] += ali * bl[j];
    }
  }
}

void matmul_nt_into(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.cols()) throw std::invalid_argument("matmul_nt: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), p = b.rows();
  out = Matrix(n, p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.row(i);
    double* oi = out.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double* bj = b.row(j);
      double acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) acc += ai[l] * bj[l];
      oi[j] = acc;
    }
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out;
  matmul_into(a, b, out);
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out;
  transpose_into(m, out);
  return out;
}

void transpose_into(const Matrix& m, Matrix& out) {
  out = Matrix(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
}

double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  const double* d = m.data();
  for (std::size_t i = 0; i < m.size(); ++i) acc += d[i] * d[i];
  return std::sqrt(acc);
}

double max_abs(const Matrix& m) {
  double acc = 0.0;
  const double* d = m.data();
  for (std::size_t i = 0; i < m.size(); ++i) acc = std::max(acc, std::fabs(d[i]));
  return acc;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double acc = 0.0;
  const double* da = a.data();
  const double* db = b.data();
  for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::fabs(da[i] - db[i]));
  return acc;
}

}  // namespace biadmm

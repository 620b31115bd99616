#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace radnlp::nn {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zeros_like(const Matrix& m) { return Matrix(m.rows_, m.cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void fill(double v);
  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  bool all_finite() const;
  double squared_norm() const;

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Vector = std::vector<double>;

// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  const double* xp = x.data();
  double* yp = y.data();
  for (std::size_t i = 0; i < n; ++i) yp[i] += a * xp[i];
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// y += x^T W for W of shape |x| x |y|.
void add_vec_mat(std::span<const double> x, const Matrix& w, std::span<double> y);

// y += W z for W of shape |y| x |z|.
void add_mat_vec(const Matrix& w, std::span<const double> z, std::span<double> y);

// G += x z^T for G of shape |x| x |z|.
void add_outer(std::span<const double> x, std::span<const double> z, Matrix& g);

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace radnlp::nn

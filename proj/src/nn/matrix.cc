#include "radnlp/nn/matrix.h"

#include <algorithm>
#include <cmath>

namespace radnlp::nn {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double Matrix::squared_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

void add_vec_mat(std::span<const double> x, const Matrix& w, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) axpy(x[i], w.row(i), y);
  }
}

void add_mat_vec(const Matrix& w, std::span<const double> z, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += dot(w.row(i), z);
}

void add_outer(std::span<const double> x, std::span<const double> z, Matrix& g) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) axpy(x[i], z, g.row(i));
  }
}

}  // namespace radnlp::nn

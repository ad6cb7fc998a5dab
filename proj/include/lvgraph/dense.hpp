#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lvgraph {

/// Square row-major double matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  double max_abs() const noexcept;
  double trace() const noexcept;

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double s) noexcept;

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// ab - ba
DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b);

/// Square matrix polynomial in the spectral parameter: sum_d coeffs[d] * lambda^d.
/// Trailing zero coefficients are dropped, so the zero polynomial has none.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t size, std::vector<DenseMatrix> coeffs);

  std::size_t size() const noexcept { return size_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<DenseMatrix>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of lambda^d; the zero matrix beyond the degree.
  DenseMatrix coeff(std::size_t d) const;

  DenseMatrix evaluate(double lambda) const;

  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<DenseMatrix> coeffs_;
};

/// [A, B] as a polynomial: sum over d of sum_{i+j=d} (A_i B_j - B_j A_i).
PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace lvgraph

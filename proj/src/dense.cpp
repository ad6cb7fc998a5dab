#include "lvgraph/dense.hpp"

#include <algorithm>
#include <cmath>

#include "lvgraph/error.hpp"
#include "lvgraph/kernels.hpp"

namespace lvgraph {
namespace {

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, "matrix sizes differ");
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

double DenseMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  check_same(n_, rhs.n_);
  kernels::axpy(1.0, rhs.data(), data(), data_.size());
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  check_same(n_, rhs.n_);
  kernels::axpy(-1.0, rhs.data(), data(), data_.size());
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  check_same(a.n_, b.n_);
  DenseMatrix c(a.n_);
  kernels::gemm(a.data(), b.data(), c.data(), a.n_);
  return c;
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

PolyMatrix::PolyMatrix(std::size_t size, std::vector<DenseMatrix> coeffs) : size_(size), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) check_same(c.size(), size_);
  while (!coeffs_.empty() && coeffs_.back().max_abs() == 0.0) coeffs_.pop_back();
}

DenseMatrix PolyMatrix::coeff(std::size_t d) const {
  if (d < coeffs_.size()) return coeffs_[d];
  return DenseMatrix(size_);
}

DenseMatrix PolyMatrix::evaluate(double lambda) const {
  DenseMatrix out(size_);
  for (std::size_t d = coeffs_.size(); d-- > 0;) {
    out *= lambda;
    out += coeffs_[d];
  }
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  check_same(a.size_, b.size_);
  std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<DenseMatrix> out;
  for (std::size_t d = 0; d < len; ++d) out.push_back(a.coeff(d) - b.coeff(d));
  return PolyMatrix(a.size_, std::move(out));
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) {
  check_same(a.size(), b.size());
  if (a.coeffs().empty() || b.coeffs().empty()) return PolyMatrix(a.size(), {});
  std::vector<DenseMatrix> out(a.coeffs().size() + b.coeffs().size() - 1, DenseMatrix(a.size()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) out[i + j] += commutator(a.coeffs()[i], b.coeffs()[j]);
  return PolyMatrix(a.size(), std::move(out));
}

}  // namespace lvgraph

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lvgraph/rational.hpp"

namespace lvgraph {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
std::vector<Rational> operator*(const RationalMatrix& a, const std::vector<Rational>& x);

/// Rank over Q. Rows are scaled to integers, then reduced with Bareiss'
/// fraction-free elimination.
std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column of the reduced row
/// echelon form.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Exact inverse; throws Error(PreconditionFailed) if m is singular or not square.
RationalMatrix inverse(const RationalMatrix& m);

/// Scales a rational vector to a primitive integer vector (gcd 1) whose first
/// nonzero entry is positive. The zero vector maps to zeros.
std::vector<std::int64_t> primitive_integer(const std::vector<Rational>& v);

}  // namespace lvgraph

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lvgraph/dense.hpp"
#include "lvgraph/graph.hpp"

namespace lvgraph {

/// Cyclic shift with (Delta)_{i,j} = 1 iff j = i + 1 (mod n).
DenseMatrix shift_matrix(std::size_t n);
/// Delta^p for any integer p (negative powers are transposes).
DenseMatrix shift_power(std::size_t n, long p);

struct LaxPair {
  PolyMatrix L;
  PolyMatrix M;
};

/// Bogoyavlenskij pair for B(n,k) at x:
///   L = X Delta^{-k} + lambda Delta,
///   M = sum_{t=k+1}^{n-1} Delta^t X Delta^{-t} - lambda Delta^{k+1}.
/// Throws Error(BadParameter) unless 1 <= k < n/2 and x has n entries.
LaxPair bogo_lax(int n, int k, std::span<const double> x);

/// Clone layout of a weighted B(n,k). Clone coordinates follow clone_graph
/// order: all clones of vertex 1, then of vertex 2, and so on. Missing clones
/// (index above a vertex's weight, up to N = max weight) read as zero.
class CloneLayout {
 public:
  CloneLayout(int base_n, int k, std::vector<std::int64_t> weights);

  int base_n() const noexcept { return base_n_; }
  int k() const noexcept { return k_; }
  int max_clones() const noexcept { return max_clones_; }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  std::size_t clone_count() const noexcept { return clone_count_; }

  SkewGraph base_graph() const;
  SkewGraph cloned_graph() const;

  /// y_s = sum_i x_{s_i}.
  std::vector<double> collapse(std::span<const double> xc) const;
  /// planes[i][s] = x_{s_{i+1}}, zero-padded; i < N.
  std::vector<std::vector<double>> planes(std::span<const double> xc) const;

 private:
  void check(std::span<const double> xc) const;

  int base_n_;
  int k_;
  int max_clones_ = 0;
  std::vector<std::int64_t> weights_;
  std::size_t clone_count_ = 0;
};

/// bogo_lax evaluated at y = collapse(xc).
LaxPair pullback_lax(const CloneLayout& layout, std::span<const double> xc);

/// Block pair of order nN with L_(i,j) = L^{(j)} built from the clone plane
/// X^{(j)}, and M_(i,j) = delta_{ij} sum_r (M0^{(r)} + Delta^k X^{(r)} Delta^{-k})
/// - Delta^k X^{(j)} Delta^{-k} - lambda Delta^{k+1}.
LaxPair block_lax(const CloneLayout& layout, std::span<const double> xc);

using PolyBuilder = std::function<PolyMatrix(std::span<const double>)>;
using Flow = std::function<std::vector<double>(std::span<const double>)>;

/// Builders must have a lambda^0 part linear in x and x-independent higher
/// coefficients; dL/dt is then the lambda^0 part of L(xdot).
///
/// Returns max over lambdas of max|dL/dt - [L(lambda), M(lambda)]|.
double lax_residual(const PolyBuilder& L, const PolyBuilder& M, const Flow& flow, std::span<const double> x,
                    std::span<const double> lambdas);

/// Max-abs entry of each lambda-coefficient of dL/dt - [L, M] as a polynomial.
std::vector<double> lax_residual_by_degree(const PolyBuilder& L, const PolyBuilder& M, const Flow& flow,
                                           std::span<const double> x);

/// Coefficients c_0..c_{n-1} of det(mu I - L(lambda)) for each lambda
/// (Faddeev-LeVerrier in doubles). Row r belongs to lambdas[r].
std::vector<std::vector<double>> char_poly_invariants(const PolyMatrix& L, std::span<const double> lambdas);
std::vector<double> char_poly(const DenseMatrix& a);

enum class LaxMode { Base, Pullback, Block };

struct LaxProblem {
  std::size_t dimension = 0;
  PolyBuilder L;
  PolyBuilder M;
  Flow flow;
};

/// Base mode ignores the layout's weights and works on B(n,k) itself.
LaxProblem make_lax_problem(LaxMode mode, const CloneLayout& layout);

/// Max residual over `points` uniform random points in [lo, hi]^dim drawn
/// from seed. Points are drawn up front, so the result does not depend on jobs.
double lax_sweep(const LaxProblem& problem, std::size_t points, std::uint64_t seed, std::span<const double> lambdas,
                 unsigned jobs = 1, double lo = 0.1, double hi = 1.0);

}  // namespace lvgraph

#include "lvgraph/lax.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <thread>

#include "lvgraph/error.hpp"
#include "lvgraph/families.hpp"
#include "lvgraph/lv.hpp"

namespace lvgraph {
namespace {

std::size_t wrap(long i, std::size_t n) {
  long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

void check_bogo(int n, int k) {
  if (k < 1 || 2 * k >= n)
    throw Error(ErrorKind::BadParameter,
                "Lax pair needs 1 <= k < n/2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

// X Delta^{-k}: row i holds x_i in column i - k.
DenseMatrix diag_times_shift(std::span<const double> x, int k) {
  const std::size_t n = x.size();
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, wrap(static_cast<long>(i) - k, n)) = x[i];
  return m;
}

// Diagonal of sum_{t=k+1}^{n-1} Delta^t X Delta^{-t}, i.e. sum_t x_{i+t}.
std::vector<double> m0_diagonal(std::span<const double> x, int k) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = static_cast<std::size_t>(k) + 1; t < n; ++t) d[i] += x[(i + t) % n];
  return d;
}

// Diagonal of Delta^k X Delta^{-k}, i.e. x_{i+k}.
std::vector<double> conj_diagonal(std::span<const double> x, int k) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[(i + static_cast<std::size_t>(k)) % n];
  return d;
}

void place_block(DenseMatrix& big, const DenseMatrix& block, std::size_t bi, std::size_t bj) {
  const std::size_t n = block.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) big(bi * n + r, bj * n + c) = block(r, c);
}

}  // namespace

DenseMatrix shift_matrix(std::size_t n) { return shift_power(n, 1); }

DenseMatrix shift_power(std::size_t n, long p) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, wrap(static_cast<long>(i) + p, n)) = 1.0;
  return m;
}

LaxPair bogo_lax(int n, int k, std::span<const double> x) {
  check_bogo(n, k);
  if (x.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.size()) + " entries, expected " +
                                                  std::to_string(n));
  const auto un = static_cast<std::size_t>(n);
  PolyMatrix L(un, {diag_times_shift(x, k), shift_matrix(un)});
  PolyMatrix M(un, {DenseMatrix::diagonal(m0_diagonal(x, k)), -1.0 * shift_power(un, k + 1)});
  return {std::move(L), std::move(M)};
}

CloneLayout::CloneLayout(int base_n, int k, std::vector<std::int64_t> weights)
    : base_n_(base_n), k_(k), weights_(std::move(weights)) {
  check_bogo(base_n, k);
  if (weights_.size() != static_cast<std::size_t>(base_n))
    throw Error(ErrorKind::BadParameter, "expected " + std::to_string(base_n) + " weights, got " +
                                             std::to_string(weights_.size()));
  for (std::int64_t w : weights_) {
    if (w < 1) throw Error(ErrorKind::BadParameter, "weights must be >= 1");
    max_clones_ = std::max<int>(max_clones_, static_cast<int>(w));
    clone_count_ += static_cast<std::size_t>(w);
  }
}

SkewGraph CloneLayout::base_graph() const { return families::bogo(base_n_, k_); }

SkewGraph CloneLayout::cloned_graph() const {
  SkewGraph base = base_graph();
  return clone_graph(base, WeightVector::from_aligned(base, weights_));
}

void CloneLayout::check(std::span<const double> xc) const {
  if (xc.size() != clone_count_)
    throw Error(ErrorKind::DimensionMismatch, "clone point has " + std::to_string(xc.size()) + " entries, expected " +
                                                  std::to_string(clone_count_));
}

std::vector<double> CloneLayout::collapse(std::span<const double> xc) const {
  check(xc);
  std::vector<double> y(weights_.size(), 0.0);
  std::size_t pos = 0;
  for (std::size_t s = 0; s < weights_.size(); ++s)
    for (std::int64_t i = 0; i < weights_[s]; ++i) y[s] += xc[pos++];
  return y;
}

std::vector<std::vector<double>> CloneLayout::planes(std::span<const double> xc) const {
  check(xc);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(max_clones_),
                                       std::vector<double>(weights_.size(), 0.0));
  std::size_t pos = 0;
  for (std::size_t s = 0; s < weights_.size(); ++s)
    for (std::int64_t i = 0; i < weights_[s]; ++i) out[static_cast<std::size_t>(i)][s] = xc[pos++];
  return out;
}

LaxPair pullback_lax(const CloneLayout& layout, std::span<const double> xc) {
  auto y = layout.collapse(xc);
  return bogo_lax(layout.base_n(), layout.k(), y);
}

LaxPair block_lax(const CloneLayout& layout, std::span<const double> xc) {
  const auto n = static_cast<std::size_t>(layout.base_n());
  const auto N = static_cast<std::size_t>(layout.max_clones());
  const int k = layout.k();
  auto planes = layout.planes(xc);

  std::vector<DenseMatrix> l0(N);
  std::vector<std::vector<double>> m0(N), conj(N);
  for (std::size_t r = 0; r < N; ++r) {
    l0[r] = diag_times_shift(planes[r], k);
    m0[r] = m0_diagonal(planes[r], k);
    conj[r] = conj_diagonal(planes[r], k);
  }

  DenseMatrix L0(n * N), L1(n * N), M0(n * N), M1(n * N);
  const DenseMatrix delta = shift_matrix(n);
  const DenseMatrix minus_delta_k1 = -1.0 * shift_power(n, k + 1);
  for (std::size_t j = 0; j < N; ++j) {
    // Diagonal block: M0^{(j)} + sum_{r != j} (M0^{(r)} + Delta^k X^{(r)} Delta^{-k}),
    // which equals the sum over all r minus the j-th conjugate term.
    std::vector<double> diag = m0[j];
    for (std::size_t r = 0; r < N; ++r) {
      if (r == j) continue;
      for (std::size_t s = 0; s < n; ++s) diag[s] += m0[r][s] + conj[r][s];
    }
    std::vector<double> off(n);
    for (std::size_t s = 0; s < n; ++s) off[s] = -conj[j][s];
    for (std::size_t i = 0; i < N; ++i) {
      place_block(L0, l0[j], i, j);
      place_block(L1, delta, i, j);
      place_block(M0, DenseMatrix::diagonal(i == j ? diag : off), i, j);
      place_block(M1, minus_delta_k1, i, j);
    }
  }
  return {PolyMatrix(n * N, {std::move(L0), std::move(L1)}), PolyMatrix(n * N, {std::move(M0), std::move(M1)})};
}

double lax_residual(const PolyBuilder& L, const PolyBuilder& M, const Flow& flow, std::span<const double> x,
                    std::span<const double> lambdas) {
  PolyMatrix l = L(x);
  PolyMatrix m = M(x);
  std::vector<double> xdot = flow(x);
  if (xdot.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "flow dimension differs from point");
  DenseMatrix ldot = L(xdot).coeff(0);
  if (ldot.size() != l.size() || m.size() != l.size())
    throw Error(ErrorKind::DimensionMismatch, "Lax builders disagree on matrix size");
  double worst = 0.0;
  for (double lambda : lambdas) {
    DenseMatrix lv = l.evaluate(lambda);
    DenseMatrix mv = m.evaluate(lambda);
    DenseMatrix r = ldot - commutator(lv, mv);
    worst = std::max(worst, r.max_abs());
  }
  return worst;
}

std::vector<double> lax_residual_by_degree(const PolyBuilder& L, const PolyBuilder& M, const Flow& flow,
                                           std::span<const double> x) {
  PolyMatrix l = L(x);
  PolyMatrix m = M(x);
  std::vector<double> xdot = flow(x);
  PolyMatrix ldot(l.size(), {L(xdot).coeff(0)});
  PolyMatrix comm = commutator(l, m);
  std::size_t len = static_cast<std::size_t>(std::max(l.degree() + m.degree(), 0)) + 1;
  std::vector<double> out;
  for (std::size_t d = 0; d < len; ++d) out.push_back((ldot.coeff(d) - comm.coeff(d)).max_abs());
  return out;
}

std::vector<double> char_poly(const DenseMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  DenseMatrix mk(n);
  const DenseMatrix id = DenseMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + c[n - k + 1] * id;
    c[n - k] = -(a * mk).trace() / static_cast<double>(k);
  }
  c.pop_back();
  return c;
}

std::vector<std::vector<double>> char_poly_invariants(const PolyMatrix& L, std::span<const double> lambdas) {
  std::vector<std::vector<double>> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) out.push_back(char_poly(L.evaluate(lambda)));
  return out;
}

LaxProblem make_lax_problem(LaxMode mode, const CloneLayout& layout) {
  LaxProblem p;
  const int n = layout.base_n();
  const int k = layout.k();
  if (mode == LaxMode::Base) {
    auto sys = std::make_shared<LVSystem>(layout.base_graph());
    p.dimension = static_cast<std::size_t>(n);
    p.L = [n, k](std::span<const double> x) { return bogo_lax(n, k, x).L; };
    p.M = [n, k](std::span<const double> x) { return bogo_lax(n, k, x).M; };
    p.flow = [sys](std::span<const double> x) { return vector_field(*sys, x); };
    return p;
  }
  auto sys = std::make_shared<LVSystem>(layout.cloned_graph());
  p.dimension = layout.clone_count();
  p.flow = [sys](std::span<const double> x) { return vector_field(*sys, x); };
  if (mode == LaxMode::Pullback) {
    p.L = [layout](std::span<const double> x) { return pullback_lax(layout, x).L; };
    p.M = [layout](std::span<const double> x) { return pullback_lax(layout, x).M; };
  } else {
    p.L = [layout](std::span<const double> x) { return block_lax(layout, x).L; };
    p.M = [layout](std::span<const double> x) { return block_lax(layout, x).M; };
  }
  return p;
}

double lax_sweep(const LaxProblem& problem, std::size_t points, std::uint64_t seed, std::span<const double> lambdas,
                 unsigned jobs, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<std::vector<double>> xs(points, std::vector<double>(problem.dimension));
  for (auto& x : xs)
    for (double& v : x) v = dist(rng);

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(points, 1))));
  std::vector<double> worst(jobs, 0.0);
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < points; i += jobs)
      worst[id] = std::max(worst[id], lax_residual(problem.L, problem.M, problem.flow, xs[i], lambdas));
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  return *std::max_element(worst.begin(), worst.end());
}

}  // namespace lvgraph

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "lvgraph/error.hpp"
#include "lvgraph/families.hpp"
#include "lvgraph/lax.hpp"
#include "lvgraph/lv.hpp"

using namespace lvgraph;

namespace {

const std::vector<double> kLambdas{-2, -1, 1, 2, 3};

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double lo = 0.1, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

DenseMatrix power(const DenseMatrix& m, int p) {
  DenseMatrix out = DenseMatrix::identity(m.size());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

// det(mu I - A) through Eigen's LU, for comparison with the coefficients.
double char_value(const DenseMatrix& a, double mu) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = (i == j ? mu : 0.0) - a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m.determinant();
}

}  // namespace

TEST_CASE("shift matrix") {
  const DenseMatrix d3 = shift_matrix(3);
  CHECK(d3(0, 1) == 1.0);
  CHECK(d3(1, 2) == 1.0);
  CHECK(d3(2, 0) == 1.0);
  CHECK(d3.max_abs() == 1.0);
  CHECK(d3.trace() == 0.0);
  const DenseMatrix d5 = shift_matrix(5);
  CHECK(d5 * shift_power(5, -1) == DenseMatrix::identity(5));
  CHECK(power(shift_matrix(6), 6) == DenseMatrix::identity(6));
  CHECK(shift_power(7, 3) == power(shift_matrix(7), 3));
}

TEST_CASE("bogo_lax structure") {
  const int n = 5, k = 2;
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  const LaxPair p = bogo_lax(n, k, e1);
  const DenseMatrix l0 = p.L.coeff(0);
  int nonzero = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) nonzero += l0(i, j) != 0.0;
  CHECK(nonzero == 1);
  // X Delta^{-k}: x_1 sits in row 1, column 1 - k (mod n), i.e. column 4.
  CHECK(l0(0, 3) == 1.0);

  std::mt19937_64 rng(1);
  const auto x = random_point(rng, 5);
  const LaxPair q = bogo_lax(n, k, x);
  const DenseMatrix m0 = q.M.coeff(0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) CHECK(m0(i, j) == 0.0);
  CHECK(q.L.degree() == 1);
  CHECK(q.M.degree() == 1);
  CHECK(q.L.coeff(1) == shift_matrix(5));
  CHECK(q.M.coeff(1) == -1.0 * shift_power(5, 3));

  CHECK_THROWS_AS(bogo_lax(6, 3, std::vector<double>(6, 1.0)), Error);
  CHECK_THROWS_AS(bogo_lax(5, 2, std::vector<double>(4, 1.0)), Error);
}

TEST_CASE("M0 matches its conjugation formula") {
  std::mt19937_64 rng(2);
  for (int n = 3; n <= 9; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const auto x = random_point(rng, static_cast<std::size_t>(n));
      const DenseMatrix X = DenseMatrix::diagonal(x);
      DenseMatrix expected(static_cast<std::size_t>(n));
      for (int t = k + 1; t <= n - 1; ++t)
        expected += shift_power(static_cast<std::size_t>(n), t) * X * shift_power(static_cast<std::size_t>(n), -t);
      const DenseMatrix got = bogo_lax(n, k, x).M.coeff(0);
      CHECK((got - expected).max_abs() < 1e-14);
      const DenseMatrix l0 = X * shift_power(static_cast<std::size_t>(n), -k);
      CHECK(bogo_lax(n, k, x).L.coeff(0) == l0);
    }
}

TEST_CASE("Lax residual on the base pairs") {
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 9; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const CloneLayout layout(n, k, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
      const auto problem = make_lax_problem(LaxMode::Base, layout);
      for (int i = 0; i < 20; ++i) {
        const auto x = random_point(rng, static_cast<std::size_t>(n));
        CHECK(lax_residual(problem.L, problem.M, problem.flow, x, kLambdas) < 1e-10);
      }
    }
}

TEST_CASE("fixed point of KM(5)") {
  const CloneLayout layout(5, 1, {1, 1, 1, 1, 1});
  const auto problem = make_lax_problem(LaxMode::Base, layout);
  const std::vector<double> ones(5, 1.0);
  CHECK(problem.L(problem.flow(ones)).coeff(0).max_abs() == 0.0);
  const PolyMatrix comm = commutator(problem.L(ones), problem.M(ones));
  for (const auto& c : comm.coeffs()) CHECK(c.max_abs() < 1e-12);
  CHECK(lax_residual(problem.L, problem.M, problem.flow, ones, kLambdas) < 1e-12);
}

TEST_CASE("a wrong M is detected") {
  const CloneLayout layout(5, 2, {1, 1, 1, 1, 1});
  const auto problem = make_lax_problem(LaxMode::Base, layout);
  const PolyBuilder wrong = [](std::span<const double> x) {
    const LaxPair p = bogo_lax(5, 2, x);
    return PolyMatrix(5, {p.M.coeff(0), -1.0 * p.M.coeff(1)});
  };
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_point(rng, 5);
    CHECK(lax_residual(problem.L, wrong, problem.flow, x, kLambdas) > 0.1);
  }
}

TEST_CASE("clone layouts") {
  const CloneLayout layout(5, 2, {2, 1, 3, 1, 1});
  CHECK(layout.max_clones() == 3);
  CHECK(layout.clone_count() == 8);
  const std::vector<double> xc{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(layout.collapse(xc) == std::vector<double>{3, 3, 15, 7, 8});
  const auto planes = layout.planes(xc);
  REQUIRE(planes.size() == 3);
  CHECK(planes[0] == std::vector<double>{1, 3, 4, 7, 8});
  CHECK(planes[1] == std::vector<double>{2, 0, 5, 0, 0});
  CHECK(planes[2] == std::vector<double>{0, 0, 6, 0, 0});
  CHECK(layout.cloned_graph().order() == 8);
  CHECK_THROWS_AS(CloneLayout(5, 2, {1, 1}), Error);
  CHECK_THROWS_AS(CloneLayout(5, 2, {0, 1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(layout.collapse(std::vector<double>(5, 1.0)), Error);
}

TEST_CASE("pullback pairs") {
  std::mt19937_64 rng(5);
  const CloneLayout trivial(5, 2, {1, 1, 1, 1, 1});
  const auto x = random_point(rng, 5);
  const LaxPair base = bogo_lax(5, 2, x);
  const LaxPair pulled = pullback_lax(trivial, x);
  CHECK(pulled.L == base.L);
  CHECK(pulled.M == base.M);

  const CloneLayout two(5, 2, {2, 1, 1, 1, 1});
  const auto xc = random_point(rng, 6);
  CHECK(pullback_lax(two, xc).L.coeff(0)(0, 3) == xc[0] + xc[1]);
}

TEST_CASE("block pairs") {
  std::mt19937_64 rng(6);
  SUBCASE("N = 1 reproduces the base pair exactly") {
    for (int n = 3; n <= 9; ++n)
      for (int k = 1; 2 * k < n; ++k) {
        const auto x = random_point(rng, static_cast<std::size_t>(n));
        const CloneLayout layout(n, k, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
        const LaxPair block = block_lax(layout, x);
        const LaxPair base = bogo_lax(n, k, x);
        CHECK(block.L == base.L);
        CHECK(block.M == base.M);
      }
  }
  SUBCASE("every clone coordinate is an entry of L") {
    const CloneLayout layout(5, 2, {2, 1, 2, 1, 1});
    std::vector<double> xc(layout.clone_count());
    for (std::size_t i = 0; i < xc.size(); ++i) xc[i] = 1.0 + static_cast<double>(i);
    const DenseMatrix l0 = block_lax(layout, xc).L.coeff(0);
    for (double v : xc) {
      bool found = false;
      for (std::size_t i = 0; i < l0.size(); ++i)
        for (std::size_t j = 0; j < l0.size(); ++j) found = found || l0(i, j) == v;
      CHECK(found);
    }
    // Clone 2 of vertex 1 lives in block column 2, row 1 of that block.
    CHECK(l0(0, 5 + 3) == xc[1]);
  }
}

TEST_CASE("residuals of pullback and block pairs") {
  std::mt19937_64 rng(7);
  const std::vector<std::tuple<int, int, std::vector<std::int64_t>>> cases{
      {5, 2, {2, 1, 2, 1, 1}}, {6, 2, {3, 1, 2, 1, 1, 3}}, {7, 3, {1, 2, 1, 1, 2, 1, 1}}, {5, 1, {3, 3, 1, 2, 1}}};
  for (const auto& [n, k, w] : cases) {
    const CloneLayout layout(n, k, w);
    for (LaxMode mode : {LaxMode::Pullback, LaxMode::Block}) {
      const auto problem = make_lax_problem(mode, layout);
      for (int i = 0; i < 20; ++i) {
        const auto x = random_point(rng, problem.dimension);
        CHECK(lax_residual(problem.L, problem.M, problem.flow, x, kLambdas) < 1e-10);
      }
    }
  }
}

TEST_CASE("residual coefficients vanish degree by degree") {
  std::mt19937_64 rng(8);
  const CloneLayout layout(6, 2, {3, 1, 2, 1, 1, 2});
  const auto problem = make_lax_problem(LaxMode::Block, layout);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_point(rng, problem.dimension);
    const auto by_degree = lax_residual_by_degree(problem.L, problem.M, problem.flow, x);
    REQUIRE(by_degree.size() == 3);
    CHECK(by_degree[0] < 1e-12);
    CHECK(by_degree[1] < 1e-12);
    CHECK(by_degree[2] < 1e-12);
  }
}

TEST_CASE("lax_sweep is independent of the job count") {
  const CloneLayout layout(6, 2, {3, 1, 2, 1, 1, 2});
  const auto problem = make_lax_problem(LaxMode::Block, layout);
  const double one = lax_sweep(problem, 40, 9, kLambdas, 1);
  CHECK(lax_sweep(problem, 40, 9, kLambdas, 4) == one);
  CHECK(one < 1e-10);
}

TEST_CASE("characteristic polynomial") {
  CHECK(char_poly(DenseMatrix(4)) == std::vector<double>(4, 0.0));
  std::mt19937_64 rng(10);
  for (std::size_t n = 1; n <= 8; ++n) {
    DenseMatrix a(n);
    const auto v = random_point(rng, n * n, -1.0, 1.0);
    for (std::size_t i = 0; i < n * n; ++i) a.data()[i] = v[i];
    const auto c = char_poly(a);
    REQUIRE(c.size() == n);
    for (double mu : {-1.5, 0.3, 2.0}) {
      double p = 1.0;
      for (std::size_t j = n; j-- > 0;) p = p * mu + c[j];
      CHECK(p == doctest::Approx(char_value(a, mu)).epsilon(1e-10));
    }
  }
}

TEST_CASE("pullback invariants are base invariants at the collapsed point") {
  std::mt19937_64 rng(11);
  const CloneLayout layout(5, 1, {2, 1, 1, 3, 1});
  const auto xc = random_point(rng, layout.clone_count());
  const auto pulled = char_poly_invariants(pullback_lax(layout, xc).L, kLambdas);
  const auto base = char_poly_invariants(bogo_lax(5, 1, layout.collapse(xc)).L, kLambdas);
  CHECK(pulled == base);
}

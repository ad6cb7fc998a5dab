#include "lvgraph/lv.hpp"

#include <algorithm>
#include <cmath>

#include "lvgraph/error.hpp"
#include "lvgraph/kernels.hpp"

namespace lvgraph {

LVSystem::LVSystem(SkewGraph graph) : graph_(std::move(graph)) {
  const std::size_t n = graph_.order();
  dense_.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) dense_[s * n + t] = graph_.arc(s, t).to_double();
}

double LVSystem::hamiltonian(std::span<const double> x) const {
  if (x.size() != dimension()) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  double h = 0.0;
  for (double v : x) h += v;
  return h;
}

std::vector<double> vector_field(const LVSystem& sys, std::span<const double> x) {
  std::vector<double> out(sys.dimension());
  vector_field(sys, x, out);
  return out;
}

void vector_field(const LVSystem& sys, std::span<const double> x, std::span<double> out) {
  const std::size_t n = sys.dimension();
  if (x.size() != n || out.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "expected a point of dimension " + std::to_string(n) + ", got " + std::to_string(x.size()));
  kernels::lv_field(sys.dense_adjacency().data(), x.data(), out.data(), n);
}

std::size_t rank(const LVSystem& sys) { return rank(sys.graph().adjacency()); }

double CasimirMonomial::evaluate(std::span<const double> x) const {
  if (x.size() != exponents.size()) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  double value = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (exponents[i] != 0) value *= std::pow(x[i], static_cast<double>(exponents[i]));
  return value;
}

std::vector<CasimirMonomial> casimir_basis(const LVSystem& sys) {
  std::vector<CasimirMonomial> out;
  for (const auto& v : nullspace(sys.graph().adjacency())) out.push_back({primitive_integer(v)});
  return out;
}

// ---------------------------------------------------------------------------

LinearMap::LinearMap(LVSystem domain, LVSystem codomain, RationalMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.dimension() || matrix_.cols() != domain_.dimension())
    throw Error(ErrorKind::DimensionMismatch, "matrix must be " + std::to_string(codomain_.dimension()) + "x" +
                                                  std::to_string(domain_.dimension()));
}

std::vector<double> LinearMap::apply(std::span<const double> x) const {
  if (x.size() != domain_.dimension()) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  std::vector<double> y(codomain_.dimension(), 0.0);
  for (std::size_t u = 0; u < y.size(); ++u)
    for (std::size_t s = 0; s < x.size(); ++s)
      if (!matrix_(u, s).is_zero()) y[u] += matrix_(u, s).to_double() * x[s];
  return y;
}

LinearMap compose(const LinearMap& second, const LinearMap& first) {
  if (!(first.codomain() == second.domain()))
    throw Error(ErrorKind::PreconditionFailed, "linear maps do not compose");
  return LinearMap(first.domain(), second.codomain(), second.matrix() * first.matrix());
}

LinearMap inverse(const LinearMap& phi) {
  return LinearMap(phi.codomain(), phi.domain(), inverse(phi.matrix()));
}

bool is_poisson_map(const LinearMap& phi) {
  const RationalMatrix& b = phi.matrix();
  const SkewGraph& src = phi.domain().graph();
  const SkewGraph& dst = phi.codomain().graph();
  const std::size_t n = src.order();
  const std::size_t m = dst.order();
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) {
      const Rational& a_uv = dst.arc(u, v);
      for (std::size_t s = 0; s < n; ++s) {
        if (b(u, s).is_zero() && b(v, s).is_zero()) continue;
        for (std::size_t t = s; t < n; ++t) {
          const Rational& a_st = src.arc(s, t);
          Rational lhs = (a_uv - a_st) * b(u, s) * b(v, t) + (a_uv + a_st) * b(u, t) * b(v, s);
          if (!lhs.is_zero()) return false;
        }
      }
    }
  return true;
}

bool preserves_hamiltonian(const LinearMap& phi) {
  const RationalMatrix& b = phi.matrix();
  for (std::size_t s = 0; s < b.cols(); ++s) {
    Rational sum;
    for (std::size_t u = 0; u < b.rows(); ++u) sum += b(u, s);
    if (sum != Rational(1)) return false;
  }
  return true;
}

bool is_lv_morphism(const LinearMap& phi) { return preserves_hamiltonian(phi) && is_poisson_map(phi); }

LinearMap lv_of_morphism(const GraphMap& m) {
  if (!is_graph_morphism(m)) throw Error(ErrorKind::NotMorphism, "map is not a graph morphism");
  RationalMatrix b(m.codomain().order(), m.domain().order());
  for (std::size_t s = 0; s < m.domain().order(); ++s) b(m(s), s) = 1;
  return LinearMap(LVSystem(m.domain()), LVSystem(m.codomain()), std::move(b));
}

LinearMap decloning_lvmap(const SkewGraph& g) { return lv_of_morphism(declone(g).projection); }

NormalFormPartition normal_form(const LinearMap& phi) {
  const RationalMatrix& b = phi.matrix();
  const SkewGraph& src = phi.domain().graph();
  const SkewGraph& dst = phi.codomain().graph();
  if (!is_lv_morphism(phi)) throw Error(ErrorKind::PreconditionFailed, "map is not an LV morphism");
  if (rank(b) != dst.order()) throw Error(ErrorKind::PreconditionFailed, "map is not surjective");
  if (!is_irreducible(dst)) throw Error(ErrorKind::PreconditionFailed, "target system is reducible");

  const std::size_t none = dst.order();
  std::vector<std::size_t> part_of(src.order(), none);
  for (std::size_t s = 0; s < src.order(); ++s)
    for (std::size_t u = 0; u < dst.order(); ++u) {
      if (b(u, s).is_zero()) continue;
      if (b(u, s) != Rational(1))
        throw Error(ErrorKind::PreconditionFailed, "normal form violated: entry " + b(u, s).to_string());
      if (part_of[s] != none)
        throw Error(ErrorKind::PreconditionFailed, "normal form violated: column " + src.label(s) + " hits two parts");
      part_of[s] = u;
    }

  NormalFormPartition out;
  for (std::size_t u = 0; u < dst.order(); ++u) out.parts.push_back({dst.label(u), {}});
  for (std::size_t s = 0; s < src.order(); ++s) {
    if (part_of[s] == none)
      throw Error(ErrorKind::PreconditionFailed, "normal form violated: " + src.label(s) + " in no part");
    out.parts[part_of[s]].second.push_back(src.label(s));
  }
  for (std::size_t s = 0; s < src.order(); ++s)
    for (std::size_t t = 0; t < src.order(); ++t) {
      if (part_of[s] == part_of[t]) continue;
      if (src.arc(s, t) != dst.arc(part_of[s], part_of[t]))
        throw Error(ErrorKind::PreconditionFailed, "normal form violated: a(" + src.label(s) + "," + src.label(t) +
                                                       ") differs from the target arc");
    }
  return out;
}

LinearMap declone_lv_morphism(const LinearMap& phi) {
  if (!is_lv_morphism(phi)) throw Error(ErrorKind::PreconditionFailed, "map is not an LV morphism");
  if (rank(phi.matrix()) != phi.codomain().dimension())
    throw Error(ErrorKind::PreconditionFailed, "map is not surjective");

  const SkewGraph& src = phi.domain().graph();
  DecloneResult src_dec = declone(src);
  DecloneResult dst_dec = declone(phi.codomain().graph());
  LinearMap down = compose(lv_of_morphism(dst_dec.projection), phi);
  NormalFormPartition parts = normal_form(down);

  std::vector<std::size_t> part_of(src.order());
  for (std::size_t u = 0; u < parts.parts.size(); ++u)
    for (const auto& label : parts.parts[u].second) part_of[src.index_of(label)] = u;

  RationalMatrix b(dst_dec.quotient.order(), src_dec.quotient.order());
  const std::size_t unset = dst_dec.quotient.order();
  std::vector<std::size_t> target(src_dec.quotient.order(), unset);
  for (std::size_t s = 0; s < src.order(); ++s) {
    std::size_t c = src_dec.class_of[s];
    if (target[c] == unset) {
      target[c] = part_of[s];
    } else if (target[c] != part_of[s]) {
      throw Error(ErrorKind::PreconditionFailed, "decloning classes do not refine the normal form");
    }
  }
  for (std::size_t c = 0; c < target.size(); ++c) b(target[c], c) = 1;
  return LinearMap(LVSystem(src_dec.quotient), LVSystem(dst_dec.quotient), std::move(b));
}

LinearMap glplus_sample(const SkewGraph& g, std::mt19937_64& rng) {
  DecloneResult dec = declone(g);
  std::vector<std::vector<std::size_t>> members(dec.quotient.order());
  for (std::size_t s = 0; s < g.order(); ++s) members[dec.class_of[s]].push_back(s);

  std::uniform_int_distribution<int> entry(-3, 3);
  RationalMatrix b(g.order(), g.order());
  for (const auto& cls : members) {
    const std::size_t k = cls.size();
    RationalMatrix block(k, k);
    do {
      for (std::size_t j = 0; j < k; ++j) {
        Rational sum;
        for (std::size_t i = 0; i + 1 < k; ++i) {
          block(i, j) = entry(rng);
          sum += block(i, j);
        }
        block(k - 1, j) = Rational(1) - sum;
      }
    } while (rank(block) < k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(cls[i], cls[j]) = block(i, j);
  }
  LVSystem sys(g);
  return LinearMap(sys, sys, std::move(b));
}

LinearMap glplus_sample(const SkewGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return glplus_sample(g, rng);
}

AutDescription aut_description(const SkewGraph& g, SearchOptions opts) {
  AutDecomposition d = decompose_automorphisms(g, std::nullopt, opts);
  return AutDescription{d.quotient_order, d.blocks};
}

}  // namespace lvgraph

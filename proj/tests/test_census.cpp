#include <doctest.h>

#include <random>
#include <set>

#include "qdt/census.hpp"
#include "qdt/kac.hpp"

using namespace qdt;

namespace {

DimVector dv(std::vector<int> e) { return DimVector(std::move(e)); }

// Test-side 2x2 arithmetic over F_p, independent of the library kernels.
struct M2 {
  long a, b, c, d;
};

M2 mul(const M2& x, const M2& y, long p) {
  return {(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p, (x.c * y.a + x.d * y.c) % p,
          (x.c * y.b + x.d * y.d) % p};
}

bool same(const M2& x, const M2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }
long det(const M2& x, long p) { return ((x.a * x.d - x.b * x.c) % p + p) % p; }

std::vector<M2> all_m2(long p) {
  std::vector<M2> out;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c)
        for (long d = 0; d < p; ++d) out.push_back({a, b, c, d});
  return out;
}

long commuting_pairs(long p, bool invertible_only) {
  const auto ms = all_m2(p);
  long n = 0;
  for (const auto& x : ms) {
    if (invertible_only && det(x, p) == 0) continue;
    for (const auto& y : ms) {
      if (invertible_only && det(y, p) == 0) continue;
      n += same(mul(x, y, p), mul(y, x, p));
    }
  }
  return n;
}

// Isoclasses of absolutely indecomposable 2x2 matrices are the J_2(lambda),
// lambda in F_p: count the eigenvalues of non-scalar M with (M - lambda)^2 = 0.
long jordan2_abs_indecomposable(long p) {
  std::set<long> lambdas;
  for (const auto& x : all_m2(p)) {
    if (x.b == 0 && x.c == 0 && x.a == x.d) continue;
    for (long l = 0; l < p; ++l) {
      const M2 n{((x.a - l) % p + p) % p, x.b, x.c, ((x.d - l) % p + p) % p};
      const M2 sq = mul(n, n, p);
      if (sq.a == 0 && sq.b == 0 && sq.c == 0 && sq.d == 0) lambdas.insert(l);
    }
  }
  return static_cast<long>(lambdas.size());
}

MatrixRep jordan_rep(std::uint32_t p, std::vector<std::uint32_t> entries) {
  return {quivers::jordan(), dv({2}), p, {FpMatrix(2, 2, std::move(entries))}};
}

FpMatrix random_invertible(std::mt19937& rng, int n, std::uint32_t p) {
  const PrimeField F(p);
  std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
  std::vector<std::uint32_t> scratch(static_cast<std::size_t>(n) * n);
  while (true) {
    FpMatrix g(n, n);
    for (auto& x : g.data) x = pick(rng);
    if (linalg::invertible(F, g.data.data(), n, scratch.data())) return g;
  }
}

CensusOptions partitions(int n) {
  CensusOptions o;
  o.partitions = n;
  o.workers = 2;
  return o;
}

}  // namespace

TEST_CASE("GL orders") {
  CHECK(gl_order(dv({2}), 2) == 6);
  CHECK(gl_order(dv({1, 1}), 3) == 4);
  CHECK(gl_order(dv({0}), 5) == 1);
  for (long p : {2L, 3L, 5L}) {
    long invertible = 0;
    for (const auto& x : all_m2(p)) invertible += det(x, p) != 0;
    CHECK(gl_order(dv({2}), static_cast<std::uint32_t>(p)) == invertible);
    CHECK(gl_order_poly(dv({2})).eval_at_q(p) == invertible);
  }
}

TEST_CASE("prime field helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(37));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(first_primes(5) == std::vector<std::uint32_t>{2, 3, 5, 7, 11});
  CHECK_THROWS_AS(PrimeField(4), InvalidInput);
  const PrimeField F(7);
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("point counts of commuting varieties") {
  const Quiver J = quivers::jordan();
  CHECK(point_count(J, dv({1}), 2, Relations::preprojective, {}) == 4);
  CHECK(point_count(J, dv({2}), 2, Relations::preprojective, {}) == commuting_pairs(2, false));
  CHECK(point_count(J, dv({2}), 2, Relations::preprojective, {}) == 88);
  CHECK(point_count(J, dv({2}), 3, Relations::preprojective, {}) == commuting_pairs(3, false));
  const SerreConstraint both{{{{"x"}, CycleKind::invertible}, {{"x*"}, CycleKind::invertible}}, false};
  CHECK(point_count(J, dv({2}), 2, Relations::preprojective, both) == commuting_pairs(2, true));
  CHECK(point_count(J, dv({2}), 2, Relations::preprojective, both) == 18);
  CHECK(point_count(J, dv({2}), 3, Relations::preprojective, both) == commuting_pairs(3, true));
  const SerreConstraint x_inv{{{{"x"}, CycleKind::invertible}}, false};
  CHECK(point_count(J, dv({2}), 3, Relations::none, x_inv) == gl_order(dv({2}), 3));
}

TEST_CASE("stack counts") {
  const Quiver J = quivers::jordan();
  CHECK(stack_count(J, dv({2}), 2, Relations::preprojective, {}) == Rational(44, 3));
  CHECK(stack_count(J, dv({2}), 3, Relations::preprojective, {}) == Rational(315, 16));
  CHECK(stack_count(quivers::point(), dv({2}), 2, Relations::none, {}) == Rational(1, 6));
}

TEST_CASE("endomorphism algebras") {
  const EndAlgebra j = endomorphism_algebra(jordan_rep(2, {0, 1, 0, 0}));
  CHECK(j.dim() == 2);
  CHECK(j.radical_dim == 1);
  CHECK(j.unit_count == 2);
  CHECK(j.local);
  const EndAlgebra diag = endomorphism_algebra(jordan_rep(2, {0, 0, 0, 1}));
  CHECK(diag.dim() == 2);
  CHECK(diag.radical_dim == 0);
  CHECK(diag.unit_count == 1);
  CHECK_FALSE(diag.local);
  const MatrixRep zero{quivers::jordan(), dv({0}), 2, {FpMatrix(0, 0)}};
  const EndAlgebra z = endomorphism_algebra(zero);
  CHECK(z.dim() == 0);
  CHECK(z.unit_count == 1);
  // the scalar matrix has End = M_2(F_3): |GL_2(F_3)| units
  const EndAlgebra full = endomorphism_algebra(jordan_rep(3, {1, 0, 0, 1}));
  CHECK(full.dim() == 4);
  CHECK(full.unit_count == 48);
}

TEST_CASE("classification examples") {
  const Classified j = classify(jordan_rep(2, {0, 1, 0, 0}));
  CHECK_FALSE(j.decomposable);
  CHECK(j.residue_dim == 1);
  CHECK(j.absolutely_indecomposable());
  CHECK(classify(jordan_rep(2, {0, 0, 0, 1})).decomposable);
  const MatrixRep a2{quivers::a2(), dv({1, 1}), 3, {FpMatrix(1, 1, {1})}};
  CHECK(classify(a2).absolutely_indecomposable());
  // x^2 + 1 is irreducible over F_3: indecomposable, residue field F_9
  const Classified c = classify(jordan_rep(3, {0, 2, 1, 0}));
  CHECK_FALSE(c.decomposable);
  CHECK(c.residue_dim == 2);
  CHECK_FALSE(c.absolutely_indecomposable());
  const MatrixRep zero{quivers::jordan(), dv({0}), 2, {FpMatrix(0, 0)}};
  CHECK(classify(zero).decomposable);
}

TEST_CASE("classification is conjugation invariant (random)") {
  std::mt19937 rng(41);
  const Quiver q({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}, {"l", "2", "2"}});
  for (std::uint32_t p : {2u, 3u}) {
    std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
    for (int trial = 0; trial < 40; ++trial) {
      MatrixRep rho{q, dv({1, 2}), p, {FpMatrix(2, 1), FpMatrix(2, 1), FpMatrix(2, 2)}};
      for (auto& m : rho.mats)
        for (auto& x : m.data) x = pick(rng);
      const std::vector<FpMatrix> g{random_invertible(rng, 1, p), random_invertible(rng, 2, p)};
      const Classified a = classify(rho), b = classify(rho.conjugated(g));
      CHECK(a.decomposable == b.decomposable);
      CHECK(a.residue_dim == b.residue_dim);
      CHECK(endomorphism_algebra(rho).unit_count == endomorphism_algebra(rho.conjugated(g)).unit_count);
    }
  }
}

TEST_CASE("matrix representations are validated") {
  MatrixRep bad = jordan_rep(2, {0, 1, 0, 2});
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  MatrixRep shape{quivers::jordan(), dv({2}), 2, {FpMatrix(1, 2)}};
  CHECK_THROWS_AS(shape.validate(), InvalidInput);
}

TEST_CASE("absolutely indecomposable counts") {
  const Quiver J = quivers::jordan();
  CHECK(count_abs_indecomposable(J, dv({2}), 2, {}) == 2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CHECK(count_abs_indecomposable(J, dv({2}), p, {}) == jordan2_abs_indecomposable(p));
  }
  CHECK(count_abs_indecomposable(J, dv({2}), 2, SerreConstraint::loops_nilpotent(J)) == 1);
  CHECK(count_abs_indecomposable(J, dv({2}), 2, SerreConstraint::nilpotent()) == 1);
  for (std::uint32_t p : {2u, 3u, 5u}) CHECK(count_abs_indecomposable(quivers::a2(), dv({1, 1}), p, {}) == 1);
  for (int n = 2; n <= 4; ++n) CHECK(count_abs_indecomposable(quivers::point(), dv({n}), 3, {}) == 0);
  CHECK(count_abs_indecomposable(quivers::point(), dv({1}), 3, {}) == 1);
}

TEST_CASE("Kac polynomials by interpolation") {
  const PolynomialFit j = kac_polynomial_fit(quivers::jordan(), dv({2}), {});
  CHECK(j.poly == LaurentPoly::q());
  REQUIRE(j.values.size() >= 2);
  CHECK(j.values[0] == 2);
  CHECK(j.values[1] == 3);
  CHECK(kac_polynomial(quivers::a2(), dv({1, 1}), {}) == LaurentPoly(1));
  const PolynomialFit two = kac_polynomial_fit(quivers::loops(2), dv({1}), {});
  CHECK(two.poly == LaurentPoly::q_power(2));
  CHECK(two.values == std::vector<Integer>{4, 9, 25, 49});
  // the fit reproduces the raw count at every node, including check nodes
  for (const auto& fit : {j, two}) {
    REQUIRE_FALSE(fit.check_nodes.empty());
    for (std::size_t i = 0; i < fit.nodes.size(); ++i) CHECK(fit.poly.eval_at_q(fit.nodes[i]) == fit.values[i]);
  }
  CHECK(kac_polynomial(quivers::jordan(), dv({2}), SerreConstraint::loops_nilpotent(quivers::jordan())) ==
        LaurentPoly(1));
  CHECK(kac_degree_bound(quivers::loops(2), dv({3})) == 10);
  CHECK(kac_degree_bound(quivers::point(), dv({2})) == 0);
  CHECK_THROWS_AS(kac_polynomial(quivers::jordan(), dv({2}), {}, std::vector<std::uint32_t>{2, 3}), InvalidInput);
  CHECK_THROWS_AS(kac_polynomial(quivers::jordan(), dv({2}), {}, std::vector<std::uint32_t>{3, 2, 5}), InvalidInput);
}

TEST_CASE("interpolation") {
  const LaurentPoly f = LaurentPoly::q_power(3) - LaurentPoly::q() * Rational(2) + LaurentPoly(5);
  std::vector<std::pair<long, Rational>> pts;
  for (long x : {2L, 3L, 5L, 7L}) pts.emplace_back(x, f.eval_at_q(x));
  CHECK(interpolate_in_q(pts) == f);
}

TEST_CASE("point counts interpolate to polynomials") {
  const PolynomialFit f = point_count_polynomial(quivers::jordan(), dv({1}), Relations::preprojective, {});
  CHECK(f.poly == LaurentPoly::q_power(2));
}

TEST_CASE("semistable counts") {
  const Quiver A = quivers::a2();
  const StabilityCondition z({Rational(-1), Rational(0)});
  CHECK(semistable_point_count(A, dv({1, 1}), 2, z, Relations::none, {}) == 1);
  CHECK(semistable_point_count(A, dv({1, 1}), 3, z, Relations::none, {}) == 2);
  const StabilityCondition zero = StabilityCondition::degenerate(2);
  for (const DimVector& d : {dv({1, 1}), dv({2, 1}), dv({1, 2})}) {
    CHECK(semistable_point_count(A, d, 3, zero, Relations::none, {}) == point_count(A, d, 3, Relations::none, {}));
    CHECK(semistable_point_count(A, d, 2, zero, Relations::preprojective, {}) ==
          point_count(A, d, 2, Relations::preprojective, {}));
  }
}

TEST_CASE("parallel census matches the serial reference for any partitioning") {
  const StabilityCondition z({Rational(-1), Rational(0)});
  std::vector<CensusQuery> queries{
      {quivers::jordan(), dv({2}), 3, Relations::preprojective, {}, std::nullopt, Classification::full},
      {quivers::jordan(), dv({2}), 2, Relations::none, SerreConstraint::loops_nilpotent(quivers::jordan()), std::nullopt,
       Classification::full},
      {quivers::a2(), dv({2, 1}), 3, Relations::preprojective, {}, z, Classification::full},
      {quivers::a2(), dv({1, 2}), 2, Relations::none, {}, std::nullopt, Classification::absolute},
      {quivers::loops(2), dv({2}), 2, Relations::none, SerreConstraint::nilpotent(), std::nullopt,
       Classification::full},
      {quivers::point(), dv({3}), 2, Relations::none, {}, std::nullopt, Classification::full},
  };
  for (const auto& q : queries) {
    const CensusReport reference = run_census_reference(q);
    for (int parts : {1, 2, 3, 8}) CHECK(run_census(q, partitions(parts)) == reference);
    // Burnside sums are integers and the classes are nested
    if (reference.iso_classes) CHECK(*reference.indecomposable_classes <= *reference.iso_classes);
    CHECK(*reference.abs_indecomposable_classes <= *reference.indecomposable_classes);
  }
}

TEST_CASE("census errors and caps") {
  const Quiver J = quivers::jordan();
  CHECK_THROWS_AS(point_count(J, dv({2}), 4, Relations::none, {}), InvalidInput);
  CHECK_THROWS_AS(point_count(J, dv({1, 1}), 2, Relations::none, {}), InvalidInput);
  CensusOptions tiny;
  tiny.point_budget = 10;
  CHECK_THROWS_AS(point_count(quivers::loops(2), dv({2}), 3, Relations::none, {}, tiny), CapExceeded);
  CHECK_THROWS_AS(run_census_reference({J, dv({3}), 3, Relations::none, {}, std::nullopt, Classification::none}, tiny),
                  CapExceeded);
  CensusOptions small_end;
  small_end.end_budget = 2;
  CHECK_THROWS_AS(count_abs_indecomposable(J, dv({2}), 3, {}, small_end), CapExceeded);
  const SerreConstraint bad{{{{"y"}, CycleKind::nilpotent}}, false};
  CHECK_THROWS_AS(point_count(J, dv({1}), 2, Relations::none, bad), InvalidInput);
}

#include <doctest.h>

#include <random>

#include "qdt/series.hpp"

using namespace qdt;

namespace {

const LaurentPoly q = LaurentPoly::q();
const LaurentPoly u = LaurentPoly::u();
const LaurentPoly one(1);

DimVector dv(std::vector<int> e) { return DimVector(std::move(e)); }

TruncSeries monomial(const std::vector<std::string>& vars, int order, const DimVector& d, const RationalFunction& c) {
  TruncSeries s(vars, order);
  s.set_coeff(d, c);
  return s;
}

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> exp(-2, 4), coeff(-3, 3), terms(0, 3);
  LaurentPoly p;
  for (int i = terms(rng); i > 0; --i) p += LaurentPoly::monomial(exp(rng), coeff(rng));
  return p;
}

RationalFunction random_coeff(std::mt19937& rng, bool allow_denominator) {
  std::uniform_int_distribution<int> coin(0, 3);
  const LaurentPoly num = random_poly(rng);
  if (!allow_denominator || coin(rng) != 0) return num;
  const std::vector<LaurentPoly> dens{q - one, q + one, q * q - one, u + LaurentPoly(2)};
  return RationalFunction(num, dens[static_cast<std::size_t>(coin(rng)) % dens.size()]);
}

TruncSeries random_series(std::mt19937& rng, const std::vector<std::string>& vars, int order, bool constant,
                          bool allow_denominator = true) {
  TruncSeries s(vars, order);
  for (const auto& d : s.monomials()) {
    if (d.is_zero() && !constant) continue;
    s.set_coeff(d, random_coeff(rng, allow_denominator));
  }
  return s;
}

}  // namespace

TEST_CASE("LaurentPoly basics") {
  CHECK((q - one) * (q + one) == q * q - one);
  CHECK(q.to_string() == "q");
  CHECK((q * q - one).to_string() == "q^2 - 1");
  CHECK((u * u) == q);
  CHECK(LaurentPoly::monomial(-1).inverted() == u);
  CHECK((q + one).adams(2) == q * q + one);
  CHECK((u * u * u).pow(2) == q.pow(3));
  CHECK(LaurentPoly(0).is_zero());
  CHECK((q * Rational(1, 2)).integral() == false);
}

TEST_CASE("evaluation at q") {
  CHECK(eval_at_q(q - one, 2) == 1);
  CHECK(eval_at_q(RationalFunction(q * q, q - one), 3) == Rational(9, 2));
  CHECK_THROWS_AS(eval_at_q(u * u * u, 2), InvalidInput);
  CHECK_THROWS_AS(eval_at_q(q, 1), InvalidInput);
  CHECK(eval_at_q(LaurentPoly::q_power(-2), 3) == Rational(1, 9));
  CHECK((q * q + q + one).eval_at_one() == 3);
  CHECK(RationalFunction(q * q - one, q - one).eval_at_one() == 2);
}

TEST_CASE("RationalFunction is canonical") {
  const RationalFunction a(q * q - one, q - one);
  CHECK(a == RationalFunction(q + one));
  CHECK(a.is_laurent());
  CHECK(RationalFunction(q, q * q) == RationalFunction(LaurentPoly::q_power(-1)));
  CHECK_THROWS_AS(RationalFunction(q, LaurentPoly(0)), InvalidInput);
  CHECK_THROWS_AS(RationalFunction(q) / RationalFunction(0), InvalidInput);

  // a/b = c/d iff ad = cb
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly x = random_poly(rng), y = random_poly(rng), k = random_poly(rng);
    if (y.is_zero() || k.is_zero()) continue;
    const RationalFunction lhs(x, y), rhs(x * k, y * k);
    CHECK(lhs == rhs);
    const LaurentPoly z = random_poly(rng);
    CHECK((RationalFunction(x, y) == RationalFunction(z, y)) == (x == z));
  }
}

TEST_CASE("RationalFunction field laws (random)") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalFunction a = random_coeff(rng, true), b = random_coeff(rng, true), c = random_coeff(rng, true);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RationalFunction(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("series inversion") {
  const std::vector<std::string> t{"t"};
  TruncSeries f = TruncSeries::one(t, 3) - monomial(t, 3, dv({1}), 1);
  TruncSeries g = series_invert(f);
  for (int k = 0; k <= 3; ++k) CHECK(g.coeff(dv({k})) == RationalFunction(1));
  CHECK(series_invert(TruncSeries::one(t, 3)) == TruncSeries::one(t, 3));
  f = TruncSeries::one(t, 2) - monomial(t, 2, dv({1}), q);
  g = series_invert(f);
  CHECK(g.coeff(dv({1})) == RationalFunction(q));
  CHECK(g.coeff(dv({2})) == RationalFunction(q * q));
  CHECK_THROWS_AS(series_invert(monomial(t, 2, dv({1}), 1)), InvalidInput);
}

TEST_CASE("Adams operations") {
  const std::vector<std::string> t{"t"};
  CHECK(adams(2, monomial(t, 4, dv({1}), u)) == monomial(t, 4, dv({2}), q));
  std::mt19937 rng(23);
  const TruncSeries f = random_series(rng, {"t1", "t2"}, 4, true);
  CHECK(adams(1, f) == f);
  CHECK(adams(3, monomial(t, 3, dv({1}), q - one)) == monomial(t, 3, dv({3}), q.pow(3) - one));
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) CHECK(adams(m, adams(n, f)) == adams(m * n, f));
  }
  CHECK(adams(2, monomial(t, 3, dv({2}), 1)).coeff(dv({4})).is_zero());
}

TEST_CASE("plethystic exponential examples") {
  const std::vector<std::string> t{"t"};
  TruncSeries e = pleth_exp(monomial(t, 4, dv({1}), 1));
  for (int k = 0; k <= 4; ++k) CHECK(e.coeff(dv({k})) == RationalFunction(1));
  e = pleth_exp(monomial(t, 2, dv({1}), q - one));
  CHECK(e.coeff(dv({2})) == RationalFunction(q * q - q));
  e = pleth_exp(monomial(t, 2, dv({1}), RationalFunction(q, q - one)));
  CHECK(e.coeff(dv({2})) == RationalFunction(q.pow(3), (q - one) * (q * q - one)));
  // t^2 coefficient at q = 2 is the stack count 16/6 of a single point over GL_2
  CHECK(eval_at_q(e.coeff(dv({2})), 2) == Rational(8, 3));
  CHECK_THROWS_AS(pleth_exp(TruncSeries::one(t, 2)), InvalidInput);
}

TEST_CASE("Exp of a monomial has the closed form sum_k c^k t^{kd}") {
  const std::vector<std::string> vars{"t1", "t2"};
  for (const LaurentPoly& c : {one, q, q * q}) {
    for (const DimVector& d : {dv({1, 0}), dv({1, 1}), dv({0, 2})}) {
      const TruncSeries e = pleth_exp(monomial(vars, 6, d, c));
      TruncSeries expected = TruncSeries::one(vars, 6);
      for (int k = 1; k * d.total() <= 6; ++k) expected.set_coeff(d.scaled(k), c.pow(static_cast<unsigned>(k)));
      CHECK(e == expected);
    }
  }
}

TEST_CASE("plethystic logarithm examples") {
  const std::vector<std::string> t{"t"};
  TruncSeries geometric(t, 5);
  for (int k = 0; k <= 5; ++k) geometric.set_coeff(dv({k}), 1);
  CHECK(pleth_log(geometric) == monomial(t, 5, dv({1}), 1));

  // (1 - t)/(1 - q t)
  TruncSeries ratio(t, 5);
  ratio.set_coeff(dv({0}), 1);
  for (int k = 1; k <= 5; ++k) ratio.set_coeff(dv({k}), q.pow(static_cast<unsigned>(k)) - q.pow(static_cast<unsigned>(k - 1)));
  CHECK(pleth_log(ratio) == monomial(t, 5, dv({1}), q - one));

  const std::vector<std::string> two{"t1", "t2"};
  TruncSeries f(two, 4);
  f.set_coeff(dv({1, 0}), u);
  f.set_coeff(dv({1, 1}), u * u * u + LaurentPoly(2));
  CHECK(pleth_log(pleth_exp(f)) == f);
  CHECK(pleth_log(TruncSeries::one(two, 4)) == TruncSeries(two, 4));
  CHECK_THROWS_AS(pleth_log(TruncSeries(two, 4)), InvalidInput);
}

TEST_CASE("series ring laws (random)") {
  std::mt19937 rng(29);
  const std::vector<std::string> vars{"t1", "t2"};
  for (int order = 0; order <= 4; ++order) {
    for (int trial = 0; trial < 5; ++trial) {
      const TruncSeries a = random_series(rng, vars, order, true), b = random_series(rng, vars, order, true),
                        c = random_series(rng, vars, order, true);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a * TruncSeries::one(vars, order) == a);
    }
  }
}

TEST_CASE("Exp is additive and Log inverts it (random)") {
  std::mt19937 rng(31);
  const std::vector<std::string> vars{"t1", "t2"};
  for (int trial = 0; trial < 10; ++trial) {
    const TruncSeries f = random_series(rng, vars, 4, false), g = random_series(rng, vars, 4, false);
    CHECK(pleth_exp(f + g) == pleth_exp(f) * pleth_exp(g));
    CHECK(pleth_log(pleth_exp(f)) == f);
    const TruncSeries h = TruncSeries::one(vars, 4) + g;
    CHECK(pleth_exp(pleth_log(h)) == h);
    CHECK(series_log(series_exp(f)) == f);
  }
}

TEST_CASE("series compatibility is enforced") {
  CHECK_THROWS_AS(TruncSeries({"t"}, 2) + TruncSeries({"s"}, 2), InvalidInput);
  // mixed orders truncate to the smaller one
  CHECK((TruncSeries::one({"t"}, 2) * TruncSeries::one({"t"}, 3)).order() == 2);
  CHECK((TruncSeries({"t"}, 4) + TruncSeries({"t"}, 1)).order() == 1);
  TruncSeries s({"t"}, 2);
  s.set_coeff(dv({3}), 1);  // beyond the order: dropped
  CHECK(s.coeff(dv({3})).is_zero());
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(7) == -1);
}

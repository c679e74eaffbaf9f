#include "qdt/ratfunc.hpp"

#include <vector>

namespace qdt {

namespace {

using Dense = std::vector<Rational>;  // coefficient of u^i at index i

Dense to_dense(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  if (p.min_exp() < 0) throw InvalidInput("dense conversion of a polynomial with negative powers");
  Dense d(static_cast<std::size_t>(p.max_exp()) + 1, Rational(0));
  for (const auto& [e, c] : p.coeffs()) d[static_cast<std::size_t>(e)] = c;
  return d;
}

LaurentPoly from_dense(const Dense& d) {
  LaurentPoly p;
  for (std::size_t i = 0; i < d.size(); ++i) p.set_coeff(static_cast<int>(i), d[i]);
  return p;
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// a = q*b + r, deg r < deg b.
void divmod(Dense a, const Dense& b, Dense& quot, Dense& rem) {
  trim(a);
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    Rational factor = a.back() / lead;
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  rem = std::move(a);
}

void make_monic(Dense& d) {
  if (d.empty()) return;
  Rational lead = d.back();
  for (auto& c : d) c /= lead;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  Dense x = to_dense(a), y = to_dense(b);
  trim(x);
  trim(y);
  while (!y.empty()) {
    Dense q, r;
    divmod(x, y, q, r);
    make_monic(r);
    x = std::move(y);
    y = std::move(r);
  }
  make_monic(x);
  return from_dense(x);
}

LaurentPoly poly_divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw InvalidInput("division by the zero polynomial");
  // Allow Laurent numerators by factoring out the lowest power of u.
  const int shift_a = a.is_zero() ? 0 : std::min(a.min_exp(), 0);
  const int shift_b = b.min_exp();
  Dense q, r;
  Dense bd = to_dense(b.shifted(-shift_b));
  divmod(to_dense(a.shifted(-shift_a)), bd, q, r);
  if (!r.empty()) throw ConsistencyError("polynomial division is not exact");
  return from_dense(q).shifted(shift_a - shift_b);
}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // Move the monomial part of the denominator into the numerator.
  const int s = den_.min_exp();
  if (s != 0) {
    den_ = den_.shifted(-s);
    num_ = num_.shifted(-s);
  }
  if (den_.max_exp() > 0) {
    const int m = num_.min_exp();
    LaurentPoly core = num_.shifted(-m);
    LaurentPoly g = poly_gcd(core, den_);
    if (!(g == LaurentPoly(1))) {
      core = poly_divide_exact(core, g);
      den_ = poly_divide_exact(den_, g);
    }
    num_ = core.shifted(m);
  }
  const Rational lead = den_.coeff(den_.max_exp());
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.num_.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_laurent() && o.is_laurent()) {
    num_ *= o.num_;
    if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw InvalidInput("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out(*this);
  out.num_ = -out.num_;
  return out;
}

RationalFunction RationalFunction::adams(int n) const { return RationalFunction(num_.adams(n), den_.adams(n)); }

RationalFunction RationalFunction::inverted() const { return RationalFunction(num_.inverted(), den_.inverted()); }

Rational RationalFunction::eval_at_q(long q0) const {
  Rational d = den_.eval_at_q(q0);
  if (d == 0) throw InvalidInput("denominator vanishes at q = " + std::to_string(q0));
  Rational v = num_.eval_at_q(q0) / d;
  v.canonicalize();
  return v;
}

Rational RationalFunction::eval_at_one() const {
  Rational d = den_.eval_at_one();
  if (d == 0) throw InvalidInput("denominator vanishes at u = 1");
  Rational v = num_.eval_at_one() / d;
  v.canonicalize();
  return v;
}

std::string RationalFunction::to_string() const {
  if (is_laurent()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace qdt

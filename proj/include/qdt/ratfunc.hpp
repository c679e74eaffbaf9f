#pragma once

#include <string>

#include "qdt/laurent.hpp"

namespace qdt {

// Quotient of Laurent polynomials in u, kept in canonical form: the
// denominator is an ordinary polynomial in u with nonzero constant term and
// leading coefficient 1, coprime to the numerator. Equality is structural.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(int c) : num_(c), den_(1) {}                     // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}         // NOLINT
  RationalFunction(const LaurentPoly& p) : num_(p), den_(1) {}      // NOLINT
  RationalFunction(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_ == LaurentPoly(1); }
  bool is_constant() const { return is_laurent() && num_.is_constant(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  bool operator==(const RationalFunction&) const = default;

  RationalFunction adams(int n) const;
  RationalFunction inverted() const;  // u -> u^{-1}

  Rational eval_at_q(long q0) const;
  Rational eval_at_one() const;

  std::string to_string() const;

 private:
  void normalize();

  LaurentPoly num_;
  LaurentPoly den_{1};
};

// Exact Euclidean gcd of ordinary polynomials (no negative powers), monic.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);
// Exact division; throws ConsistencyError when b does not divide a.
LaurentPoly poly_divide_exact(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace qdt

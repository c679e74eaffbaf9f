#pragma once

#include <map>
#include <string>

#include "qdt/quiver.hpp"

namespace qdt {

// Laurent polynomial in u = q^{1/2} with rational coefficients. Zero
// coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int constant) : LaurentPoly(Rational(constant)) {}  // NOLINT
  LaurentPoly(const Rational& constant);                          // NOLINT

  static LaurentPoly monomial(int u_exp, const Rational& coeff = 1);
  // q^k = u^{2k}
  static LaurentPoly q_power(int k, const Rational& coeff = 1) { return monomial(2 * k, coeff); }
  static LaurentPoly q() { return q_power(1); }
  static LaurentPoly u() { return monomial(1); }

  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int u_exp) const;
  void set_coeff(int u_exp, const Rational& c);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  int min_exp() const;  // requires !is_zero()
  int max_exp() const;  // requires !is_zero()
  bool even_powers_only() const;
  bool integral() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  LaurentPoly operator-() const;
  LaurentPoly pow(unsigned n) const;
  bool operator==(const LaurentPoly&) const = default;

  // Multiplies by u^k.
  LaurentPoly shifted(int k) const;
  // u -> u^n (Adams operation on a Tate-type weight polynomial).
  LaurentPoly adams(int n) const;
  // u -> u^{-1}
  LaurentPoly inverted() const;

  // Exact value at u^2 = q0. Throws on odd powers of u or q0 < 1.
  Rational eval_at_q(long q0) const;
  // Value at u = 1 (sum of coefficients).
  Rational eval_at_one() const;

  // "q^2 - 1" when only even powers occur, otherwise in terms of u.
  std::string to_string() const;

 private:
  std::map<int, Rational> coeffs_;
};

}  // namespace qdt

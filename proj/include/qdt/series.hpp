#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdt/ratfunc.hpp"

namespace qdt {

// Multivariate power series in t_i (one variable per vertex), truncated at
// total degree `order`, with rational-function coefficients in u.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::vector<std::string> variables, int order);

  static TruncSeries one(std::vector<std::string> variables, int order);
  static TruncSeries monomial(std::vector<std::string> variables, int order, const DimVector& exponent,
                              const RationalFunction& coeff);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  int order() const { return order_; }
  const std::map<DimVector, RationalFunction>& terms() const { return terms_; }

  RationalFunction coeff(const DimVector& d) const;
  RationalFunction constant_term() const;
  // Ignored (dropped) when d lies beyond the truncation order.
  void set_coeff(const DimVector& d, const RationalFunction& c);
  void add_to_coeff(const DimVector& d, const RationalFunction& c);

  TruncSeries truncated(int order) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(TruncSeries a, const RationalFunction& c);
  TruncSeries operator-() const;
  bool operator==(const TruncSeries&) const = default;

  // Every monomial exponent of total degree <= order, graded then
  // lexicographic.
  std::vector<DimVector> monomials() const;

 private:
  void require_compatible(const TruncSeries& o) const;

  std::vector<std::string> vars_;
  int order_ = 0;
  std::map<DimVector, RationalFunction> terms_;
};

// g with f * g = 1 up to truncation; f must have nonzero constant term.
TruncSeries series_invert(const TruncSeries& f);

// u -> u^n and t^d -> t^{n d}; terms pushed past the order are dropped.
TruncSeries adams(int n, const TruncSeries& f);

// Ordinary exp/log by the Euler-operator recursion
// |d| g_d = sum_{e != 0} |e| h_e g_{d-e}.
TruncSeries series_exp(const TruncSeries& h);  // h(0) = 0
TruncSeries series_log(const TruncSeries& g);  // g(0) = 1

// Exp(f) = exp(sum_{n>=1} adams(n, f) / n); f must have zero constant term.
TruncSeries pleth_exp(const TruncSeries& f);
// Log(g) = sum_{n>=1} mu(n)/n adams(n, log g); g must have constant term 1.
TruncSeries pleth_log(const TruncSeries& g);

int moebius(int n);

// Value at u^2 = q0 of a polynomial or rational function of Tate type.
Rational eval_at_q(const LaurentPoly& p, long q0);
Rational eval_at_q(const RationalFunction& f, long q0);

}  // namespace qdt

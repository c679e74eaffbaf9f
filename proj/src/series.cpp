#include "qdt/series.hpp"

#include <algorithm>

namespace qdt {

namespace {

void enumerate_monomials(std::size_t n, int order, std::vector<DimVector>& out) {
  // Graded: all exponents of degree 0, then 1, ... each block lexicographic
  // (descending in the first variable so that t_1 precedes t_2).
  std::vector<int> cur(n, 0);
  for (int deg = 0; deg <= order; ++deg) {
    if (n == 0) {
      if (deg == 0) out.emplace_back(cur);
      continue;
    }
    std::vector<DimVector> block;
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
      if (i + 1 == n) {
        cur[i] = remaining;
        block.emplace_back(cur);
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        cur[i] = k;
        self(self, i + 1, remaining - k);
      }
    };
    rec(rec, 0, deg);
    out.insert(out.end(), block.begin(), block.end());
  }
}

}  // namespace

TruncSeries::TruncSeries(std::vector<std::string> variables, int order)
    : vars_(std::move(variables)), order_(order) {
  if (order_ < 0) throw InvalidInput("truncation order must be >= 0");
}

TruncSeries TruncSeries::one(std::vector<std::string> variables, int order) {
  TruncSeries s(std::move(variables), order);
  s.set_coeff(DimVector::zero(s.nvars()), RationalFunction(1));
  return s;
}

TruncSeries TruncSeries::monomial(std::vector<std::string> variables, int order, const DimVector& exponent,
                                  const RationalFunction& coeff) {
  TruncSeries s(std::move(variables), order);
  s.set_coeff(exponent, coeff);
  return s;
}

RationalFunction TruncSeries::coeff(const DimVector& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? RationalFunction() : it->second;
}

RationalFunction TruncSeries::constant_term() const { return coeff(DimVector::zero(nvars())); }

void TruncSeries::set_coeff(const DimVector& d, const RationalFunction& c) {
  if (d.size() != nvars()) throw InvalidInput("series monomial has wrong number of variables");
  if (d.total() > order_) return;
  if (c.is_zero()) {
    terms_.erase(d);
  } else {
    terms_[d] = c;
  }
}

void TruncSeries::add_to_coeff(const DimVector& d, const RationalFunction& c) {
  if (d.size() != nvars()) throw InvalidInput("series monomial has wrong number of variables");
  if (d.total() > order_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(d, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncSeries TruncSeries::truncated(int order) const {
  TruncSeries out(vars_, std::min(order, order_));
  for (const auto& [d, c] : terms_) out.set_coeff(d, c);
  return out;
}

void TruncSeries::require_compatible(const TruncSeries& o) const {
  if (vars_ != o.vars_) throw InvalidInput("series over different variable lists");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  require_compatible(o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (const auto& [d, c] : o.terms_) add_to_coeff(d, c);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  a.require_compatible(b);
  TruncSeries out(a.vars_, std::min(a.order_, b.order_));
  for (const auto& [da, ca] : a.terms_) {
    const int ta = da.total();
    for (const auto& [db, cb] : b.terms_) {
      if (ta + db.total() > out.order_) continue;
      out.add_to_coeff(da + db, ca * cb);
    }
  }
  return out;
}

TruncSeries operator*(TruncSeries a, const RationalFunction& c) {
  if (c.is_zero()) {
    a.terms_.clear();
    return a;
  }
  for (auto& [d, v] : a.terms_) v *= c;
  return a;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out(*this);
  for (auto& [d, v] : out.terms_) v = -v;
  return out;
}

std::vector<DimVector> TruncSeries::monomials() const {
  std::vector<DimVector> out;
  enumerate_monomials(nvars(), order_, out);
  return out;
}

TruncSeries series_invert(const TruncSeries& f) {
  const RationalFunction c0 = f.constant_term();
  if (c0.is_zero()) throw InvalidInput("series_invert: constant term is zero");
  const RationalFunction inv0 = RationalFunction(1) / c0;
  TruncSeries g(f.variables(), f.order());
  for (const auto& d : f.monomials()) {
    if (d.is_zero()) {
      g.set_coeff(d, inv0);
      continue;
    }
    RationalFunction acc;
    for (const auto& [e, fe] : f.terms()) {
      if (e.is_zero() || !e.leq(d)) continue;
      RationalFunction ge = g.coeff(d - e);
      if (!ge.is_zero()) acc += fe * ge;
    }
    g.set_coeff(d, -(acc * inv0));
  }
  return g;
}

TruncSeries adams(int n, const TruncSeries& f) {
  if (n < 1) throw InvalidInput("Adams operation index must be >= 1");
  TruncSeries out(f.variables(), f.order());
  for (const auto& [d, c] : f.terms()) {
    if (d.total() * n > f.order()) continue;
    out.set_coeff(d.scaled(n), c.adams(n));
  }
  return out;
}

TruncSeries series_exp(const TruncSeries& h) {
  if (!h.constant_term().is_zero()) throw InvalidInput("series_exp: constant term must be zero");
  TruncSeries g(h.variables(), h.order());
  for (const auto& d : h.monomials()) {
    if (d.is_zero()) {
      g.set_coeff(d, RationalFunction(1));
      continue;
    }
    RationalFunction acc;
    for (const auto& [e, he] : h.terms()) {
      if (!e.leq(d)) continue;
      RationalFunction gr = g.coeff(d - e);
      if (!gr.is_zero()) acc += he * gr * RationalFunction(e.total());
    }
    g.set_coeff(d, acc * RationalFunction(Rational(1, d.total())));
  }
  return g;
}

TruncSeries series_log(const TruncSeries& g) {
  if (!(g.constant_term() == RationalFunction(1))) throw InvalidInput("series_log: constant term must be 1");
  TruncSeries h(g.variables(), g.order());
  for (const auto& d : g.monomials()) {
    if (d.is_zero()) continue;
    RationalFunction acc = g.coeff(d) * RationalFunction(d.total());
    for (const auto& [e, he] : h.terms()) {
      if (e == d || !e.leq(d)) continue;
      RationalFunction gr = g.coeff(d - e);
      if (!gr.is_zero()) acc -= he * gr * RationalFunction(e.total());
    }
    h.set_coeff(d, acc * RationalFunction(Rational(1, d.total())));
  }
  return h;
}

int moebius(int n) {
  if (n < 1) throw InvalidInput("moebius: argument must be positive");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

TruncSeries pleth_exp(const TruncSeries& f) {
  if (!f.constant_term().is_zero()) throw InvalidInput("pleth_exp: constant term must be zero");
  TruncSeries h(f.variables(), f.order());
  for (int n = 1; n <= f.order(); ++n) {
    h += adams(n, f) * RationalFunction(Rational(1, n));
  }
  return series_exp(h);
}

TruncSeries pleth_log(const TruncSeries& g) {
  if (!(g.constant_term() == RationalFunction(1))) throw InvalidInput("pleth_log: constant term must be 1");
  const TruncSeries l = series_log(g);
  TruncSeries out(g.variables(), g.order());
  for (int n = 1; n <= g.order(); ++n) {
    const int mu = moebius(n);
    if (mu == 0) continue;
    out += adams(n, l) * RationalFunction(Rational(mu, n));
  }
  return out;
}

Rational eval_at_q(const LaurentPoly& p, long q0) {
  if (q0 < 2) throw InvalidInput("evaluation point q0 must be >= 2");
  return p.eval_at_q(q0);
}

Rational eval_at_q(const RationalFunction& f, long q0) {
  if (q0 < 2) throw InvalidInput("evaluation point q0 must be >= 2");
  return f.eval_at_q(q0);
}

}  // namespace qdt

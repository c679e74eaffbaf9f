#include "qdt/kac.hpp"

#include <algorithm>
#include <cstdlib>

#include "qdt/detail/rep_space.hpp"

namespace qdt {

LaurentPoly interpolate_in_q(const std::vector<std::pair<long, Rational>>& points) {
  const std::size_t n = points.size();
  std::vector<Rational> coef(n);
  for (std::size_t i = 0; i < n; ++i) coef[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational dx = points[i].first - points[i - level].first;
      if (dx == 0) throw InvalidInput("interpolation nodes must be distinct");
      coef[i] = (coef[i] - coef[i - 1]) / dx;
    }
  }
  // Horner on the Newton form.
  LaurentPoly out;
  for (std::size_t i = n; i-- > 0;) {
    out = out * (LaurentPoly::q() - LaurentPoly(Rational(points[i].first))) + LaurentPoly(coef[i]);
  }
  return out;
}

int kac_degree_bound(const Quiver& q, const DimVector& d) {
  return static_cast<int>(std::max(1 - euler_form(q, d, d), 0L));
}

namespace {

std::vector<std::uint32_t> choose_nodes(const std::optional<std::vector<std::uint32_t>>& nodes, int bound) {
  const std::size_t needed = static_cast<std::size_t>(bound) + 2;
  if (!nodes) return first_primes(needed);
  const auto& v = *nodes;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_prime(v[i])) throw InvalidInput("interpolation node " + std::to_string(v[i]) + " is not prime");
    if (i > 0 && v[i] <= v[i - 1]) throw InvalidInput("interpolation nodes must be strictly increasing");
  }
  if (v.size() < needed) {
    throw InvalidInput("degree bound " + std::to_string(bound) + " needs " + std::to_string(needed) +
                       " primes (one is a check node), got " + std::to_string(v.size()));
  }
  return v;
}

template <class Count>
PolynomialFit fit(const std::vector<std::uint32_t>& nodes, int bound, Count count, bool integral) {
  PolynomialFit out;
  // Largest node first: it is the one most likely to exceed a budget.
  out.values.resize(nodes.size());
  for (std::size_t i = nodes.size(); i-- > 0;) out.values[i] = count(nodes[i]);
  std::vector<std::pair<long, Rational>> points;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Integer& v = out.values[i];
    if (i <= static_cast<std::size_t>(bound)) {
      out.nodes.push_back(nodes[i]);
      points.emplace_back(nodes[i], Rational(v));
    } else {
      out.check_nodes.push_back(nodes[i]);
    }
  }
  out.poly = interpolate_in_q(points);
  for (std::size_t i = out.nodes.size(); i < nodes.size(); ++i) {
    if (out.poly.eval_at_q(nodes[i]) != Rational(out.values[i])) {
      throw ConsistencyError("check node p = " + std::to_string(nodes[i]) + " disagrees with the fit " +
                             out.poly.to_string() + " (count " + out.values[i].get_str() + ")");
    }
  }
  if (integral && !out.poly.integral()) {
    throw ConsistencyError("interpolated polynomial " + out.poly.to_string() + " has non-integer coefficients");
  }
  return out;
}

}  // namespace

PolynomialFit kac_polynomial_fit(const Quiver& q, const DimVector& d, const SerreConstraint& s,
                                 const std::optional<std::vector<std::uint32_t>>& nodes,
                                 const CensusOptions& options) {
  q.check_dim(d);
  if (d.is_zero()) throw InvalidInput("Kac polynomials are defined for nonzero dimension vectors");
  s.validate(q);
  const int bound = kac_degree_bound(q, d);
  return fit(choose_nodes(nodes, bound), bound,
             [&](std::uint32_t p) { return count_abs_indecomposable(q, d, p, s, options); }, true);
}

LaurentPoly kac_polynomial(const Quiver& q, const DimVector& d, const SerreConstraint& s,
                           const std::optional<std::vector<std::uint32_t>>& nodes, const CensusOptions& options) {
  return kac_polynomial_fit(q, d, s, nodes, options).poly;
}

PolynomialFit point_count_polynomial(const Quiver& q, const DimVector& d, Relations relations,
                                     const SerreConstraint& s, const CensusOptions& options) {
  const Quiver e = relations == Relations::preprojective ? double_quiver(q) : q;
  const detail::RepLayout layout(e, d);
  const int bound = static_cast<int>(layout.entries);
  return fit(first_primes(static_cast<std::size_t>(bound) + 2), bound,
             [&](std::uint32_t p) { return point_count(q, d, p, relations, s, options); }, false);
}

std::map<DimVector, Rational> census_stack_values(const Quiver& q, int order, std::uint32_t p, Relations relations,
                                                  const SerreConstraint& s, const CensusOptions& options) {
  if (order < 0) throw InvalidInput("order must be >= 0");
  std::map<DimVector, Rational> out;
  const std::size_t n = q.vertex_count();
  out[DimVector::zero(n)] = 1;
  // All d with 0 < |d| <= order.
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      const DimVector d(cur);
      if (d.is_zero()) return;
      Rational value = stack_count(q, d, p, relations, s, options);
      const long dd = euler_form(q, d, d);
      Integer twist;
      mpz_ui_pow_ui(twist.get_mpz_t(), p, static_cast<unsigned long>(std::labs(dd)));
      if (dd >= 0) {
        value *= twist;
      } else {
        value /= twist;
      }
      value.canonicalize();
      out[d] = value;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cur[i] = k;
      self(self, i + 1, remaining - k);
    }
    cur[i] = 0;
  };
  rec(rec, 0, order);
  return out;
}

}  // namespace qdt

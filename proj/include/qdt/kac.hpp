#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qdt/census.hpp"
#include "qdt/ratfunc.hpp"

namespace qdt {

// The polynomial in q of degree < points.size() through (q_i, v_i), found
// by Newton divided differences over Q.
LaurentPoly interpolate_in_q(const std::vector<std::pair<long, Rational>>& points);

// max(1 - (d,d), 0): the degree of a_{Q,d}.
int kac_degree_bound(const Quiver& q, const DimVector& d);

struct PolynomialFit {
  LaurentPoly poly;  // in q = u^2
  std::vector<std::uint32_t> nodes;
  std::vector<Integer> values;
  std::vector<std::uint32_t> check_nodes;  // evaluated and matched, not used in the fit
};

// Counts absolutely indecomposable representations at bound + 1 primes,
// interpolates, and confirms the fit at every further node (at least one).
// Default nodes are the first bound + 2 primes.
PolynomialFit kac_polynomial_fit(const Quiver& q, const DimVector& d, const SerreConstraint& s,
                                 const std::optional<std::vector<std::uint32_t>>& nodes = std::nullopt,
                                 const CensusOptions& options = {});
LaurentPoly kac_polynomial(const Quiver& q, const DimVector& d, const SerreConstraint& s,
                           const std::optional<std::vector<std::uint32_t>>& nodes = std::nullopt,
                           const CensusOptions& options = {});

// Point count of the constraint locus as a polynomial in q, interpolated
// with degree bound = number of matrix entries, plus one check node.
PolynomialFit point_count_polynomial(const Quiver& q, const DimVector& d, Relations relations,
                                     const SerreConstraint& s, const CensusOptions& options = {});

// sum_d census_stack_count_d(p) p^{(d,d)} t^d for 0 < |d| <= order, at one
// prime; the zero coefficient is 1.
std::map<DimVector, Rational> census_stack_values(const Quiver& q, int order, std::uint32_t p, Relations relations,
                                                  const SerreConstraint& s, const CensusOptions& options = {});

}  // namespace qdt

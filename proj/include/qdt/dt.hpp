#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdt/census.hpp"
#include "qdt/series.hpp"

namespace qdt {

enum class Provenance { oracle, series_extracted, user_supplied };
std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

// Kac polynomials a^S_{Q,d}(q) for d != 0, as polynomials in u with q = u^2.
struct KacTable {
  Quiver quiver;
  SerreConstraint constraint;
  std::map<DimVector, LaurentPoly> entries;
  std::map<DimVector, Provenance> provenance;
  // Complete for 0 < |d| <= order: a dimension vector without an entry has
  // a_d = 0.
  int order = 0;
  // Set by duality_transform: entries may carry negative powers of q.
  bool laurent = false;

  // Throws on d = 0 or non-integral coefficients.
  void set(const DimVector& d, const LaurentPoly& a, Provenance how);
  LaurentPoly at(const DimVector& d) const;  // zero when absent
  bool operator==(const KacTable&) const = default;
};

// Entries a^S_d for every 0 < |d| <= order from the census.
KacTable kac_table_from_oracle(const Quiver& q, const SerreConstraint& s, int order,
                               const CensusOptions& options = {});

// Every nonzero dimension vector of total size <= order, graded.
std::vector<DimVector> dimension_vectors(std::size_t vertices, int order);

enum class StackNormalization {
  standard,  // a_d q/(q-1), which matches the census
  kacy,      // a_d/(q-1); kept for comparison, off from the census by q
};

// Exp(sum_{d != 0} a_d c(q) t^d) with c(q) = q/(q-1) (or 1/(q-1)). Its t^d
// coefficient is the stack count of the preprojective fiber times q^{(d,d)}.
TruncSeries stack_series_from_kac(const KacTable& k, int order,
                                  StackNormalization norm = StackNormalization::standard);

// a_d = (q-1)/q [t^d] Log(g). With `raw_census` the coefficients of g are
// untwisted stack counts and are first multiplied by q^{(d,d)}.
KacTable kac_from_stack_series(const TruncSeries& g, const Quiver& q, bool raw_census = false);

// Untwisted stack-count series of the constraint locus, interpolated from
// point counts at several primes. Coefficient of t^d: P_d(q)/|GL_d(F_q)|.
TruncSeries census_stack_series(const Quiver& q, int order, Relations relations, const SerreConstraint& s,
                                const CensusOptions& options = {});

// HN twist of the census count of a stratum, for Q-representations or for
// preprojective modules.
long hn_twist(const Quiver& q, const HNType& alpha, Relations relations);

// Solves total_e = sum_{alpha in HN_e} p^{tau(alpha)} prod_j sst_{alpha^j}
// for sst_d, recursively over e <= d. `total` holds untwisted stack counts.
Rational hn_semistable_series(const std::map<DimVector, Rational>& total, const Quiver& q,
                              const StabilityCondition& z, const DimVector& d, std::uint32_t p,
                              Relations relations = Relations::none);

struct WallcrossCoefficient {
  DimVector d;
  Rational lhs;  // census total
  Rational rhs;  // slope-ordered product of census semistable series
  bool pass = false;
  // Ordered decompositions contributing to the product equal hn_types(d).
  bool decompositions_match = false;
};

struct WallcrossReport {
  std::uint32_t p = 0;
  int order = 0;
  Relations relations = Relations::none;
  long perturbation = 0;
  std::vector<WallcrossCoefficient> coefficients;
  bool pass() const;
  std::optional<DimVector> first_failure() const;
};

// Both sides from brute force at u^2 = p. For preprojective relations the
// series carry the p^{(d,d)} twist and the product is commutative; for
// Q-representations it is the ordered product with
// t^a t^b = p^{-(b,a)} t^{a+b}. `perturbation` is added to every cross
// exponent (a negative control).
WallcrossReport wallcross_check(const Quiver& q, const StabilityCondition& z, std::uint32_t p, int order,
                                Relations relations, const SerreConstraint& s, const CensusOptions& options = {},
                                long perturbation = 0);

// Weight polynomials of H_c(Nak(f, d)) for 0 < |d| <= order, from the
// d_inf = 1 slice of the Pi_{Q_f} stack series divided by the Pi_Q series.
// `framed` must cover the entries (1, d) of Q_f; `unframed` all d of Q.
// Throws ConsistencyError when a quotient is not a Laurent polynomial.
std::map<DimVector, LaurentPoly> nakajima_series(const Quiver& q, const DimVector& f, int order,
                                                 const KacTable& unframed, const KacTable& framed);
// Both tables from the census.
std::map<DimVector, LaurentPoly> nakajima_series(const Quiver& q, const DimVector& f, int order,
                                                 const CensusOptions& options = {});

// Exp((q-1) sum_{d>=1} t^d), one variable "t".
TruncSeries char_stack_series(int order);
// prod_{j<=order} (1 - t^j)/(1 - q t^j)
TruncSeries char_stack_product(int order);

// prod_{m<=order} prod_{k<m} (1 - q^{2k+4-m} t^m)^{-1}, one variable "t".
TruncSeries hilb3_series(int order);
// t^n coefficient times q^{n^2 - n}, for 0 <= n <= order.
std::vector<LaurentPoly> hilb3_weights(int order);

// a_d(q) -> a_d(q^{-1}).
KacTable duality_transform(const KacTable& k);

struct PositivityViolation {
  std::size_t table = 0;
  DimVector d;
  int u_exp = 0;
  Rational coeff;
};

struct PositivityReport {
  std::size_t entries_checked = 0;
  std::vector<PositivityViolation> violations;
  bool pass() const { return violations.empty(); }
};

// First coefficient that is negative or not an integer.
std::optional<std::pair<int, Rational>> first_nonpositive(const LaurentPoly& a);
PositivityReport positivity_report(const std::vector<KacTable>& tables);

}  // namespace qdt

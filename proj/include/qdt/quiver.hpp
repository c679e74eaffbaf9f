#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdt/error.hpp"

namespace qdt {

using Rational = mpq_class;
using Integer = mpz_class;

// Nonnegative integer vector indexed by the vertices of a quiver, in
// declaration order. Also used as the exponent vector of series monomials.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::vector<int> entries);
  static DimVector zero(std::size_t n) { return DimVector(std::vector<int>(n, 0)); }
  static DimVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  int total() const;
  bool is_zero() const;
  // Componentwise <=.
  bool leq(const DimVector& other) const;

  DimVector operator+(const DimVector& other) const;
  // Throws if any entry would become negative.
  DimVector operator-(const DimVector& other) const;
  DimVector scaled(int k) const;

  // "1,0,2"
  std::string key() const;
  static DimVector parse(std::string_view text);

  auto operator<=>(const DimVector&) const = default;

 private:
  std::vector<int> entries_;
};

struct Arrow {
  std::string label;
  std::size_t source;
  std::size_t target;
  bool is_loop() const { return source == target; }
  bool operator==(const Arrow&) const = default;
};

// Arrow given by vertex names, as read from a quiver file.
struct ArrowSpec {
  std::string label;
  std::string source;
  std::string target;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  std::size_t vertex_index(std::string_view name) const;
  std::optional<std::size_t> find_arrow(std::string_view label) const;
  std::vector<ArrowSpec> arrow_specs() const;

  // Throws InvalidInput unless d is indexed by this quiver's vertices.
  void check_dim(const DimVector& d) const;
  bool is_symmetric() const;

  bool operator==(const Quiver&) const = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// Standard quivers used throughout the tests and the acceptance suite.
namespace quivers {
Quiver jordan();            // one vertex "0", one loop "x"
Quiver loops(int count);    // one vertex "0", loops "x1".."xg"
Quiver a2();                // vertices "1","2", arrow a: 1 -> 2
Quiver point();             // one vertex "0", no arrows
}  // namespace quivers

// Derived quivers. The doubled arrow of `a` is labelled "a*", the loop added
// by tripling at vertex v is "omega_v", and framing adds a first vertex "inf"
// with arrows "beta(v,m)": inf -> v for m = 1..f_v.
Quiver double_quiver(const Quiver& q);
Quiver triple_quiver(const Quiver& q);
Quiver frame_quiver(const Quiver& q, const DimVector& f);
inline constexpr std::string_view kFramingVertex = "inf";

// (d,e) = sum_i d_i e_i - sum_a d_{s(a)} e_{t(a)}
long euler_form(const Quiver& q, const DimVector& d, const DimVector& e);
// <d,e> = (d,e) - (e,d)
long antisym_form(const Quiver& q, const DimVector& d, const DimVector& e);

// King stability condition: zeta_i = re_i + sqrt(-1), so Im Z(d) = sum d_i.
class StabilityCondition {
 public:
  StabilityCondition() = default;
  explicit StabilityCondition(std::vector<Rational> real_parts);
  static StabilityCondition degenerate(std::size_t n);

  const std::vector<Rational>& real_parts() const { return real_parts_; }
  std::size_t size() const { return real_parts_.size(); }

 private:
  std::vector<Rational> real_parts_;
};

// slope(d) = -(sum re_i d_i) / (sum d_i); throws on d = 0.
Rational slope(const StabilityCondition& z, const DimVector& d);

struct GenericityReport {
  bool generic = true;
  int bound = 0;
  // Equal-slope pair with nonzero antisymmetric form, if one was found.
  std::optional<std::pair<DimVector, DimVector>> witness;
};

// Checks <d,e> = 0 for all nonzero d, e with entries <= bound and equal
// slopes. A bounded search, not a proof over all dimension vectors.
GenericityReport is_generic(const Quiver& q, const StabilityCondition& z, int bound);

struct HNType {
  std::vector<DimVector> parts;
  auto operator<=>(const HNType&) const = default;
};

// Ordered tuples of nonzero dimension vectors summing to d with strictly
// decreasing slopes, sorted lexicographically. The singleton (d) is always
// present.
std::vector<HNType> hn_types(const Quiver& q, const StabilityCondition& z, const DimVector& d);

// f(alpha) = sum_{j<k} <alpha^j, alpha^k>, the exponent on IC-normalised series.
long hn_f(const Quiver& q, const HNType& alpha);
// tau(alpha) = -sum_{j<k} (alpha^k, alpha^j): exponent of the HN stratum
// relative to the product of semistable stack counts for Q-representations.
long hn_census_twist(const Quiver& q, const HNType& alpha);
// Same for modules over the preprojective algebra, where extensions between
// HN factors are governed by the symmetrised form (a,b) + (b,a).
long hn_census_twist_preprojective(const Quiver& q, const HNType& alpha);

enum class CycleKind { nilpotent, invertible };

struct CycleClause {
  std::vector<std::string> cycle;  // arrow labels in path order
  CycleKind kind = CycleKind::nilpotent;
  bool operator==(const CycleClause&) const = default;
};

// A Serre subcategory cut out by eigenvalue conditions on cycles: a nilpotent
// clause asks for the cycle to act nilpotently (eigenvalues in {0}), an
// invertible clause for eigenvalues in the complement of 0. When
// `nilpotent_module` is set the module must also be nilpotent, i.e. every
// arrow word of length sum(d) acts by zero.
struct SerreConstraint {
  std::vector<CycleClause> clauses;
  bool nilpotent_module = false;

  bool empty() const { return clauses.empty() && !nilpotent_module; }
  std::string describe() const;
  // Throws InvalidInput on unknown labels or a cycle that is not a closed path.
  void validate(const Quiver& q) const;

  static SerreConstraint none() { return {}; }
  // Every loop of q acts nilpotently.
  static SerreConstraint loops_nilpotent(const Quiver& q);
  static SerreConstraint nilpotent() { return SerreConstraint{{}, true}; }
  bool operator==(const SerreConstraint&) const = default;
};

}  // namespace qdt

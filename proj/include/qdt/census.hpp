#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdt/field.hpp"
#include "qdt/quiver.hpp"

namespace qdt {

enum class Relations {
  none,
  preprojective,  // enumerate double(Q) and impose sum_a [x_a, x_a*] = 0
};

std::string to_string(Relations r);
Relations parse_relations(std::string_view text);

enum class Classification {
  none,
  absolute,  // indecomposable and absolutely indecomposable classes
  full,      // also all isomorphism classes
};

struct CensusOptions {
  std::uint64_t point_budget = 200'000'000;
  std::uint64_t end_budget = std::uint64_t{1} << 20;
  // OpenMP threads; the point space is cut into `partitions` chunks
  // (0: one per worker). Results never depend on either.
  int workers = default_workers();
  int partitions = 0;
  // Called from the enumerating threads with the number of points scanned
  // so far in a chunk; must be thread-safe.
  std::function<void(std::uint64_t)> progress;

  // QDT_WORKERS, else 1.
  static int default_workers();
};

struct CensusQuery {
  Quiver quiver;
  DimVector dim;
  std::uint32_t p = 2;
  Relations relations = Relations::none;
  SerreConstraint constraint;
  std::optional<StabilityCondition> stability;
  Classification classification = Classification::none;
};

struct CensusReport {
  std::uint32_t p = 0;
  DimVector dim;
  Relations relations = Relations::none;
  std::string constraint;
  Integer point_count;
  Rational stack_count;
  std::optional<Integer> semistable_count;
  std::optional<Integer> iso_classes;
  std::optional<Integer> indecomposable_classes;
  std::optional<Integer> abs_indecomposable_classes;

  bool operator==(const CensusReport&) const = default;
};

// Orbit-reduced OpenMP enumeration.
CensusReport run_census(const CensusQuery& query, const CensusOptions& options = {});
// Plain serial enumeration of every point, kept as the reference.
CensusReport run_census_reference(const CensusQuery& query, const CensusOptions& options = {});

Integer point_count(const Quiver& q, const DimVector& d, std::uint32_t p, Relations relations,
                    const SerreConstraint& s, const CensusOptions& options = {});
Rational stack_count(const Quiver& q, const DimVector& d, std::uint32_t p, Relations relations,
                     const SerreConstraint& s, const CensusOptions& options = {});
Integer semistable_point_count(const Quiver& q, const DimVector& d, std::uint32_t p,
                               const StabilityCondition& z, Relations relations, const SerreConstraint& s,
                               const CensusOptions& options = {});
Integer count_abs_indecomposable(const Quiver& q, const DimVector& d, std::uint32_t p,
                                 const SerreConstraint& s, const CensusOptions& options = {});

// A representation over F_p: one d_t x d_s matrix per arrow, in arrow order.
struct MatrixRep {
  Quiver quiver;
  DimVector dim;
  std::uint32_t p = 2;
  std::vector<FpMatrix> mats;

  // Throws InvalidInput on shape mismatch or entries >= p.
  void validate() const;
  // g . rho with g = (g_i) in GL_d: x_a -> g_t x_a g_s^{-1}.
  MatrixRep conjugated(const std::vector<FpMatrix>& g) const;
};

struct EndAlgebra {
  // Block-diagonal endomorphisms, one d_i x d_i block per vertex.
  std::vector<std::vector<FpMatrix>> basis;
  int radical_dim = 0;
  Integer unit_count;
  bool local = false;

  int dim() const { return static_cast<int>(basis.size()); }
};

EndAlgebra endomorphism_algebra(const MatrixRep& rho, std::uint64_t end_budget = std::uint64_t{1} << 20);

struct Classified {
  bool decomposable = false;
  int residue_dim = 0;  // dim End/J when indecomposable
  bool absolutely_indecomposable() const { return !decomposable && residue_dim == 1; }
};

// Zero representations count as decomposable (they are not indecomposable).
Classified classify(const MatrixRep& rho, std::uint64_t end_budget = std::uint64_t{1} << 20);

}  // namespace qdt

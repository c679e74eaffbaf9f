#pragma once

// Building blocks shared by the serial reference enumerator and the
// orbit-reduced parallel enumerator. Not part of the public API.

#include <cstdint>
#include <optional>
#include <vector>

#include "qdt/census.hpp"
#include "qdt/field.hpp"

namespace qdt::detail {

using u128 = unsigned __int128;

Integer to_integer(u128 v);
// p^k, or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint64_t k, std::uint64_t limit);

struct ArrowSlot {
  std::size_t source;
  std::size_t target;
  int rows;  // d_target
  int cols;  // d_source
  std::size_t offset;
  std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
};

// Flat layout of X(Q)_d: the matrix of arrow a occupies entries
// [offset, offset + d_t d_s) in row-major order. Endomorphisms are
// block-diagonal and stored as a vector of length sum_i d_i^2.
struct RepLayout {
  RepLayout(const Quiver& q, const DimVector& d);

  std::vector<int> dim;
  std::vector<ArrowSlot> arrows;
  std::vector<std::size_t> block_offset;
  std::size_t phi_size = 0;
  std::size_t entries = 0;
  int total_dim = 0;
  int max_dim = 0;
};

// Per-thread scratch space; sized once from the layout.
struct Workspace {
  explicit Workspace(const RepLayout& layout);

  std::vector<std::uint32_t> m1, m2, m3, m4;  // max_dim^2 (m3, m4: twice that)
  std::vector<std::uint32_t> system;          // entries x phi_size
  std::vector<std::uint32_t> null;            // phi_size x phi_size
  std::vector<std::uint32_t> basis;           // phi_size x phi_size
  std::vector<std::uint32_t> element;         // phi_size
  std::vector<std::uint32_t> digits;          // phi_size
  std::vector<std::uint32_t> vec;             // max_dim
  std::vector<int> pivots;
  std::vector<int> ranks;
  std::vector<std::vector<std::uint32_t>> spans, next_spans;  // per vertex
};

// Relations and Serre clauses, evaluated on a point of X(E)_d where E is
// the enumerated quiver (Q itself, or its double for the preprojective
// relation).
class PointFilter {
 public:
  PointFilter(const Quiver& enumerated, const RepLayout& layout, const PrimeField& F, bool preprojective,
              std::size_t original_arrows, const SerreConstraint& constraint);

  // `skip_arrow`: clauses supported on that single arrow are assumed to hold.
  bool accepts(const std::uint32_t* x, Workspace& ws, std::optional<std::size_t> skip_arrow = {}) const;
  // Evaluates only the clauses supported on the single arrow `arrow`.
  bool single_arrow_clauses_hold(std::size_t arrow, const std::uint32_t* x, Workspace& ws) const;

 private:
  struct Clause {
    std::vector<std::size_t> path;
    CycleKind kind;
    bool single_arrow;
  };
  bool clause_holds(const Clause& c, const std::uint32_t* x, Workspace& ws) const;
  bool moment_map_vanishes(const std::uint32_t* x, Workspace& ws) const;
  bool module_nilpotent(const std::uint32_t* x, Workspace& ws) const;

  const RepLayout& layout_;
  const PrimeField& F_;
  bool preprojective_;
  std::size_t original_arrows_;
  std::vector<Clause> clauses_;
  bool nilpotent_module_;
};

// Brute-force King semistability: a point is unstable iff some arrow-invariant
// tuple of subspaces (U_i) with 0 != U != V has slope(dim U) > slope(d).
class SemistableTester {
 public:
  SemistableTester(const RepLayout& layout, const PrimeField& F, const StabilityCondition& z, std::uint64_t cap);
  bool semistable(const std::uint32_t* x, Workspace& ws) const;
  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  struct Subspace {
    int dim;
    std::vector<std::uint32_t> basis;  // dim x n
    std::vector<std::uint32_t> check;  // (n - dim) x n; v in U iff check * v = 0
  };
  bool invariant(const std::vector<int>& choice, const std::uint32_t* x, Workspace& ws) const;

  const RepLayout& layout_;
  const PrimeField& F_;
  std::vector<std::vector<Subspace>> subspaces_;  // per vertex
  std::vector<std::vector<int>> candidates_;
};

std::vector<std::vector<std::uint32_t>> all_subspace_bases(const PrimeField& F, int n, int k);

struct EndInfo {
  int dim = 0;
  bool decomposable = false;
  int radical_dim = -1;  // known for local algebras
  int residue_dim = -1;
  std::uint64_t units = 0;  // 0 when not computed
  bool indecomposable() const { return !decomposable && dim > 0; }
  bool absolutely_indecomposable() const { return indecomposable() && residue_dim == 1; }
};

enum class EndMode {
  absolute,  // only indecomposable points need unit counts
  full,      // unit counts for every point
};

class EndSolver {
 public:
  EndSolver(const RepLayout& layout, const PrimeField& F, std::uint64_t end_budget);

  // Solves for End inside the span of `seed` (m rows of length phi_size)
  // imposing the intertwining equations of arrows with impose[a] != 0.
  // The basis is left in ws.basis; returns its size.
  int solve(const std::uint32_t* x, const std::uint32_t* seed, int m, const std::vector<char>& impose,
            Workspace& ws) const;
  EndInfo analyse(int k, EndMode mode, Workspace& ws) const;

  bool element_invertible(const std::uint32_t* e, Workspace& ws) const;
  bool element_nilpotent(const std::uint32_t* e, Workspace& ws) const;

 private:
  const RepLayout& layout_;
  const PrimeField& F_;
  std::uint64_t end_budget_;
};

// Orbits of GL_{d_s} x GL_{d_t} on the matrices of one arrow, found by
// union-find over the generator action. A G-invariant count over X(E)_d
// equals sum over orbit representatives x of |orbit(x)| times the count
// over the remaining arrows with the pivot fixed to x.
class PivotOrbits {
 public:
  struct Orbit {
    std::uint64_t index;  // base-p encoding of the representative
    std::uint64_t size;
  };
  PivotOrbits(const RepLayout& layout, std::size_t arrow, const PrimeField& F);

  std::size_t arrow() const { return arrow_; }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  void decode(std::uint64_t index, std::uint32_t* matrix) const;

 private:
  std::size_t arrow_;
  std::uint32_t p_;
  std::size_t size_;
  std::vector<Orbit> orbits_;
};

struct Tally {
  std::uint64_t evaluated = 0;
  u128 points = 0;
  u128 semistable = 0;
  u128 aut_all = 0;    // sum of |Aut| over qualifying points
  u128 aut_indec = 0;  // ... over indecomposable points
  u128 aut_abs = 0;    // ... over absolutely indecomposable points
  void merge(const Tally& o);
  bool operator==(const Tally&) const = default;
};

// Everything needed to evaluate points for one census query.
struct CensusPlan {
  CensusPlan(const CensusQuery& query, const CensusOptions& options);

  CensusQuery query;
  CensusOptions options;
  Quiver enumerated;
  RepLayout layout;
  PrimeField field;
  PointFilter filter;
  std::optional<SemistableTester> stability;
  EndSolver end;

  // Visit one point with multiplicity `weight`.
  void visit(const std::uint32_t* x, u128 weight, const std::uint32_t* seed, int m,
             const std::vector<char>& impose, std::optional<std::size_t> skip_arrow, Workspace& ws,
             Tally& tally) const;
};

// Serial, exhaustive over all p^n points.
Tally enumerate_reference(const CensusPlan& plan);
// Orbit-reduced on a pivot arrow, split into partitions run under OpenMP.
Tally enumerate_parallel(const CensusPlan& plan);

}  // namespace qdt::detail

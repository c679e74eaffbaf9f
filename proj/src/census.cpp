#include "qdt/census.hpp"

#include <cstdlib>

#include "qdt/detail/rep_space.hpp"

namespace qdt {

std::string to_string(Relations r) { return r == Relations::preprojective ? "preprojective" : "none"; }

Relations parse_relations(std::string_view text) {
  if (text == "none") return Relations::none;
  if (text == "preprojective") return Relations::preprojective;
  throw InvalidInput("unknown relations '" + std::string(text) + "' (expected none or preprojective)");
}

int CensusOptions::default_workers() {
  const char* env = std::getenv("QDT_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw InvalidInput("QDT_WORKERS must be a positive integer");
  return static_cast<int>(v);
}

namespace {

Integer burnside(detail::u128 aut_sum, const Integer& gl, const char* what) {
  const Integer sum = detail::to_integer(aut_sum);
  if (sum % gl != 0) {
    throw ConsistencyError(std::string("Burnside sum for ") + what + " is not divisible by |GL_d|");
  }
  return sum / gl;
}

CensusReport make_report(const CensusQuery& q, const detail::Tally& t) {
  CensusReport r;
  r.p = q.p;
  r.dim = q.dim;
  r.relations = q.relations;
  r.constraint = q.constraint.describe();
  r.point_count = detail::to_integer(t.points);
  const Integer gl = gl_order(q.dim, q.p);
  r.stack_count = Rational(r.point_count, gl);
  r.stack_count.canonicalize();
  if (q.stability) r.semistable_count = detail::to_integer(t.semistable);
  if (q.classification == Classification::full) r.iso_classes = burnside(t.aut_all, gl, "isomorphism classes");
  if (q.classification != Classification::none) {
    r.indecomposable_classes = burnside(t.aut_indec, gl, "indecomposables");
    r.abs_indecomposable_classes = burnside(t.aut_abs, gl, "absolutely indecomposables");
  }
  return r;
}

}  // namespace

CensusReport run_census(const CensusQuery& query, const CensusOptions& options) {
  const detail::CensusPlan plan(query, options);
  return make_report(query, detail::enumerate_parallel(plan));
}

CensusReport run_census_reference(const CensusQuery& query, const CensusOptions& options) {
  const detail::CensusPlan plan(query, options);
  return make_report(query, detail::enumerate_reference(plan));
}

Integer point_count(const Quiver& q, const DimVector& d, std::uint32_t p, Relations relations,
                    const SerreConstraint& s, const CensusOptions& options) {
  return run_census({q, d, p, relations, s, std::nullopt, Classification::none}, options).point_count;
}

Rational stack_count(const Quiver& q, const DimVector& d, std::uint32_t p, Relations relations,
                     const SerreConstraint& s, const CensusOptions& options) {
  return run_census({q, d, p, relations, s, std::nullopt, Classification::none}, options).stack_count;
}

Integer semistable_point_count(const Quiver& q, const DimVector& d, std::uint32_t p,
                               const StabilityCondition& z, Relations relations, const SerreConstraint& s,
                               const CensusOptions& options) {
  return *run_census({q, d, p, relations, s, z, Classification::none}, options).semistable_count;
}

Integer count_abs_indecomposable(const Quiver& q, const DimVector& d, std::uint32_t p,
                                 const SerreConstraint& s, const CensusOptions& options) {
  return *run_census({q, d, p, Relations::none, s, std::nullopt, Classification::absolute}, options)
              .abs_indecomposable_classes;
}

}  // namespace qdt

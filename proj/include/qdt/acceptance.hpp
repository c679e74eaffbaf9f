#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdt/census.hpp"

namespace qdt {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;  // run metadata, not part of any result payload
};

// Runs every acceptance criterion in order; `on_result` sees each result as
// soon as it is known.
std::vector<CriterionResult> run_acceptance(const CensusOptions& options = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

// Independent oracles used by the acceptance suite and the tests.
namespace oracle {
// Number of plane partitions of n, by enumerating rows.
Integer plane_partitions(int n);
// sum over partitions lambda of n of q^{n + length(lambda)}, the weight
// polynomial of Hilb^n(C^2).
LaurentPoly hilbert_scheme_c2(int n);
// |{(A, B) in GL_n(F_p)^2 : AB = BA}| by direct enumeration.
Integer commuting_invertible_pairs(int n, std::uint32_t p);
}  // namespace oracle

}  // namespace qdt

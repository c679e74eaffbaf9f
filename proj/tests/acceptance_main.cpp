#include <iostream>

#include "qdt/acceptance.hpp"

// One line per criterion; exits nonzero if any criterion fails.
int main() {
  bool all = true;
  qdt::run_acceptance({}, [&](const qdt::CriterionResult& r) {
    std::cout << qdt::format_result_line(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}

#include "qdt/detail/rep_space.hpp"

namespace qdt::detail {

Tally enumerate_reference(const CensusPlan& plan) {
  const std::uint32_t p = plan.field.p();
  const std::size_t n = plan.layout.entries;
  const auto total = bounded_power(p, n, plan.options.point_budget);
  if (!total) {
    const auto need = bounded_power(p, n, UINT64_MAX);
    throw CapExceeded("point space of size " + std::to_string(p) + "^" + std::to_string(n) +
                          " exceeds the point budget",
                      need ? *need : UINT64_MAX);
  }
  const std::size_t phi = plan.layout.phi_size;
  std::vector<std::uint32_t> seed(std::max<std::size_t>(1, phi * phi), 0);
  for (std::size_t i = 0; i < phi; ++i) seed[i * phi + i] = 1;
  const std::vector<char> impose(plan.layout.arrows.size(), 1);

  Workspace ws(plan.layout);
  Tally tally;
  std::vector<std::uint32_t> x(std::max<std::size_t>(1, n), 0);
  for (std::uint64_t step = 0; step < *total; ++step) {
    plan.visit(x.data(), 1, seed.data(), static_cast<int>(phi), impose, std::nullopt, ws, tally);
    if (plan.options.progress && (step & 0xFFFFF) == 0xFFFFF) plan.options.progress(step + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (++x[j] < p) break;
      x[j] = 0;
    }
  }
  return tally;
}

}  // namespace qdt::detail

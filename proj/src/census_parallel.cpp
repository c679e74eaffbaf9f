#include <algorithm>
#include <exception>

#include <omp.h>

#include "qdt/detail/rep_space.hpp"

namespace qdt::detail {

namespace {

constexpr std::uint64_t kPivotTableLimit = std::uint64_t{1} << 22;

// The largest arrow whose orbit table stays small.
std::optional<std::size_t> choose_pivot(const RepLayout& layout, std::uint32_t p) {
  std::optional<std::size_t> best;
  for (std::size_t a = 0; a < layout.arrows.size(); ++a) {
    const std::size_t m = layout.arrows[a].size();
    if (m == 0 || !bounded_power(p, m, kPivotTableLimit)) continue;
    if (!best || m > layout.arrows[*best].size()) best = a;
  }
  return best;
}

struct PivotRep {
  std::uint64_t weight;
  std::vector<std::uint32_t> matrix;
  std::vector<std::uint32_t> commutant;  // seed basis, rows of length phi_size
  int commutant_dim;
};

}  // namespace

Tally enumerate_parallel(const CensusPlan& plan) {
  const RepLayout& layout = plan.layout;
  const std::uint32_t p = plan.field.p();
  const std::size_t phi = layout.phi_size;
  const std::size_t n = layout.entries;
  const auto pivot = choose_pivot(layout, p);

  std::vector<char> impose(layout.arrows.size(), 1);
  std::vector<char> pivot_only(layout.arrows.size(), 0);
  std::vector<std::size_t> rest;  // entry positions not on the pivot
  std::vector<PivotRep> reps;
  {
    Workspace ws(layout);
    std::vector<std::uint32_t> identity(std::max<std::size_t>(1, phi * phi), 0);
    for (std::size_t i = 0; i < phi; ++i) identity[i * phi + i] = 1;
    std::vector<std::uint32_t> x(std::max<std::size_t>(1, n), 0);
    if (!pivot) {
      reps.push_back({1, {}, identity, static_cast<int>(phi)});
      for (std::size_t i = 0; i < n; ++i) rest.push_back(i);
    } else {
      const ArrowSlot& slot = layout.arrows[*pivot];
      impose[*pivot] = 0;
      pivot_only[*pivot] = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (i < slot.offset || i >= slot.offset + slot.size()) rest.push_back(i);
      }
      const PivotOrbits orbits(layout, *pivot, plan.field);
      const bool need_end = plan.query.classification != Classification::none;
      for (const auto& orbit : orbits.orbits()) {
        std::fill(x.begin(), x.end(), 0u);
        orbits.decode(orbit.index, x.data() + slot.offset);
        if (!plan.filter.single_arrow_clauses_hold(*pivot, x.data(), ws)) continue;
        PivotRep rep{orbit.size, std::vector<std::uint32_t>(x.begin() + slot.offset, x.begin() + slot.offset + slot.size()),
                     {}, 0};
        if (need_end) {
          rep.commutant_dim = plan.end.solve(x.data(), identity.data(), static_cast<int>(phi), pivot_only, ws);
          rep.commutant.assign(ws.basis.begin(), ws.basis.begin() + rep.commutant_dim * phi);
        }
        reps.push_back(std::move(rep));
      }
    }
  }

  const auto rest_count = bounded_power(p, rest.size(), UINT64_MAX);
  if (!rest_count) throw CapExceeded("point space exceeds the point budget", UINT64_MAX);
  const u128 required = static_cast<u128>(reps.size()) * *rest_count;
  if (required > plan.options.point_budget) {
    throw CapExceeded("orbit-reduced point space of " + to_integer(required).get_str() +
                          " evaluations exceeds the point budget",
                      required > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(required));
  }
  const auto total = static_cast<std::uint64_t>(required);
  const int workers = std::max(1, plan.options.workers);
  const std::uint64_t chunks = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(total, plan.options.partitions > 0 ? plan.options.partitions : 8 * workers));

  std::vector<Tally> partial(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  const std::optional<std::size_t> skip = pivot;
  const std::size_t pivot_offset = pivot ? layout.arrows[*pivot].offset : 0;

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    try {
      const std::uint64_t begin = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
      const std::uint64_t end = begin + total / chunks + (static_cast<std::uint64_t>(c) < total % chunks ? 1 : 0);
      if (begin == end) continue;
      Workspace ws(layout);
      Tally& tally = partial[c];
      std::vector<std::uint32_t> x(std::max<std::size_t>(1, n), 0);
      std::size_t r = begin / *rest_count;
      std::uint64_t offset = begin % *rest_count;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        x[rest[j]] = static_cast<std::uint32_t>(offset % p);
        offset /= p;
      }
      auto load_rep = [&](std::size_t i) {
        std::copy(reps[i].matrix.begin(), reps[i].matrix.end(), x.begin() + pivot_offset);
      };
      load_rep(r);
      for (std::uint64_t i = begin; i < end; ++i) {
        const PivotRep& rep = reps[r];
        plan.visit(x.data(), rep.weight, rep.commutant.data(), rep.commutant_dim, impose, skip, ws, tally);
        if (plan.options.progress && ((i - begin) & 0xFFFFF) == 0xFFFFF) plan.options.progress(i - begin + 1);
        std::size_t j = 0;
        for (; j < rest.size(); ++j) {
          if (++x[rest[j]] < p) break;
          x[rest[j]] = 0;
        }
        if (j == rest.size() && r + 1 < reps.size()) load_rep(++r);
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally out;
  for (const auto& t : partial) out.merge(t);
  return out;
}

}  // namespace qdt::detail

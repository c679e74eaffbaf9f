#include "qdt/detail/rep_space.hpp"

#include <algorithm>
#include <numeric>

namespace qdt::detail {

Integer to_integer(u128 v) {
  Integer out = static_cast<unsigned long>(v >> 64);
  out <<= 64;
  return out + Integer(static_cast<unsigned long>(v));
}

std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint64_t k, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (out > limit / p) return std::nullopt;
    out *= p;
  }
  if (out > limit) return std::nullopt;
  return out;
}

RepLayout::RepLayout(const Quiver& q, const DimVector& d) {
  q.check_dim(d);
  dim = d.entries();
  for (int n : dim) {
    block_offset.push_back(phi_size);
    phi_size += static_cast<std::size_t>(n) * n;
    total_dim += n;
    max_dim = std::max(max_dim, n);
  }
  for (const auto& a : q.arrows()) {
    ArrowSlot slot{a.source, a.target, dim[a.target], dim[a.source], entries};
    entries += slot.size();
    arrows.push_back(slot);
  }
}

Workspace::Workspace(const RepLayout& layout) {
  const std::size_t sq = std::max<std::size_t>(1, static_cast<std::size_t>(layout.max_dim) * layout.max_dim);
  const std::size_t phi = std::max<std::size_t>(1, layout.phi_size);
  m1.assign(sq, 0);
  m2.assign(sq, 0);
  m3.assign(2 * sq, 0);
  m4.assign(2 * sq, 0);
  system.assign(std::max<std::size_t>(1, layout.entries) * phi, 0);
  null.assign(phi * phi, 0);
  basis.assign(phi * phi, 0);
  element.assign(phi, 0);
  digits.assign(phi, 0);
  vec.assign(std::max(1, layout.max_dim), 0);
  pivots.assign(std::max<std::size_t>({phi, layout.entries, 2 * sq}) + 1, 0);
  spans.resize(layout.dim.size());
  next_spans.resize(layout.dim.size());
}

namespace {

// acc (n x m) += sign * a (n x k) * b (k x m), entries reduced mod p.
void mul_acc(const PrimeField& F, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* acc, int n, int k,
             int m, bool subtract) {
  const std::uint64_t p = F.p();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::uint64_t s = 0;
      for (int l = 0; l < k; ++l) s += static_cast<std::uint64_t>(a[i * k + l]) * b[l * m + j];
      const auto v = static_cast<std::uint32_t>(s % p);
      acc[i * m + j] = subtract ? F.sub(acc[i * m + j], v) : F.add(acc[i * m + j], v);
    }
  }
}

}  // namespace

PointFilter::PointFilter(const Quiver& enumerated, const RepLayout& layout, const PrimeField& F, bool preprojective,
                         std::size_t original_arrows, const SerreConstraint& constraint)
    : layout_(layout),
      F_(F),
      preprojective_(preprojective),
      original_arrows_(original_arrows),
      nilpotent_module_(constraint.nilpotent_module) {
  constraint.validate(enumerated);
  for (const auto& c : constraint.clauses) {
    Clause clause;
    clause.kind = c.kind;
    for (const auto& label : c.cycle) clause.path.push_back(*enumerated.find_arrow(label));
    clause.single_arrow = std::all_of(clause.path.begin(), clause.path.end(),
                                      [&](std::size_t a) { return a == clause.path.front(); });
    clauses_.push_back(std::move(clause));
  }
}

bool PointFilter::clause_holds(const Clause& c, const std::uint32_t* x, Workspace& ws) const {
  const ArrowSlot& first = layout_.arrows[c.path.front()];
  const int n = first.cols;
  if (n == 0) return true;
  std::uint32_t* cur = ws.m1.data();
  std::uint32_t* next = ws.m2.data();
  std::copy(x + first.offset, x + first.offset + first.size(), cur);
  int rows = first.rows;
  for (std::size_t j = 1; j < c.path.size(); ++j) {
    const ArrowSlot& a = layout_.arrows[c.path[j]];
    linalg::matmul(F_, x + a.offset, cur, next, a.rows, rows, n);
    std::swap(cur, next);
    rows = a.rows;
  }
  if (c.kind == CycleKind::nilpotent) return linalg::nilpotent(F_, cur, n, ws.m3.data());
  return linalg::invertible(F_, cur, n, ws.m3.data());
}

bool PointFilter::moment_map_vanishes(const std::uint32_t* x, Workspace& ws) const {
  // mu_v = sum_{a: t(a)=v} x_a x_a* - sum_{a: s(a)=v} x_a* x_a
  for (std::size_t v = 0; v < layout_.dim.size(); ++v) {
    const int n = layout_.dim[v];
    if (n == 0) continue;
    std::uint32_t* acc = ws.m1.data();
    std::fill(acc, acc + n * n, 0u);
    for (std::size_t i = 0; i < original_arrows_; ++i) {
      const ArrowSlot& a = layout_.arrows[i];
      const ArrowSlot& b = layout_.arrows[original_arrows_ + i];
      if (a.target == v) mul_acc(F_, x + a.offset, x + b.offset, acc, n, a.cols, n, false);
      if (a.source == v) mul_acc(F_, x + b.offset, x + a.offset, acc, n, a.rows, n, true);
    }
    for (int i = 0; i < n * n; ++i) {
      if (acc[i] != 0) return false;
    }
  }
  return true;
}

bool PointFilter::module_nilpotent(const std::uint32_t* x, Workspace& ws) const {
  // W_0 = V, W_{k+1} = sum_a x_a W_k; nilpotent iff this reaches 0, and the
  // total dimension strictly drops until then.
  const std::size_t nv = layout_.dim.size();
  int total = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    const int n = layout_.dim[v];
    auto& s = ws.spans[v];
    s.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) s[i * n + i] = 1;
    total += n;
  }
  std::vector<int>& rank = ws.ranks;
  rank.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) rank[v] = layout_.dim[v];
  while (total > 0) {
    for (auto& s : ws.next_spans) s.clear();
    for (const ArrowSlot& a : layout_.arrows) {
      const int ds = a.cols, dt = a.rows;
      if (ds == 0 || dt == 0) continue;
      const std::uint32_t* xa = x + a.offset;
      auto& out = ws.next_spans[a.target];
      const auto& in = ws.spans[a.source];
      for (int r = 0; r < rank[a.source]; ++r) {
        for (int i = 0; i < dt; ++i) {
          std::uint64_t acc = 0;
          for (int j = 0; j < ds; ++j) acc += static_cast<std::uint64_t>(xa[i * ds + j]) * in[r * ds + j];
          out.push_back(static_cast<std::uint32_t>(acc % F_.p()));
        }
      }
    }
    int next_total = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      const int n = layout_.dim[v];
      auto& out = ws.next_spans[v];
      const int rows = n == 0 ? 0 : static_cast<int>(out.size()) / n;
      rank[v] = rows == 0 ? 0 : linalg::rref(F_, out.data(), rows, n, ws.pivots.data());
      out.resize(static_cast<std::size_t>(rank[v]) * n);
      next_total += rank[v];
    }
    if (next_total == total) return false;
    total = next_total;
    std::swap(ws.spans, ws.next_spans);
  }
  return true;
}

bool PointFilter::accepts(const std::uint32_t* x, Workspace& ws, std::optional<std::size_t> skip_arrow) const {
  for (const auto& c : clauses_) {
    if (skip_arrow && c.single_arrow && c.path.front() == *skip_arrow) continue;
    if (!clause_holds(c, x, ws)) return false;
  }
  if (preprojective_ && !moment_map_vanishes(x, ws)) return false;
  if (nilpotent_module_ && !module_nilpotent(x, ws)) return false;
  return true;
}

bool PointFilter::single_arrow_clauses_hold(std::size_t arrow, const std::uint32_t* x, Workspace& ws) const {
  for (const auto& c : clauses_) {
    if (c.single_arrow && c.path.front() == arrow && !clause_holds(c, x, ws)) return false;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> all_subspace_bases(const PrimeField& F, int n, int k) {
  // Reduced row echelon bases: choose pivot columns, then fill every
  // non-pivot entry to the right of each row's pivot.
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint32_t p = F.p();
  std::vector<int> pivots(k);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    std::vector<std::pair<int, int>> free;
    std::vector<char> is_pivot(n, 0);
    for (int c : pivots) is_pivot[c] = 1;
    for (int r = 0; r < k; ++r) {
      for (int c = pivots[r] + 1; c < n; ++c) {
        if (!is_pivot[c]) free.emplace_back(r, c);
      }
    }
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      std::vector<std::uint32_t> basis(static_cast<std::size_t>(k) * n, 0);
      for (int r = 0; r < k; ++r) basis[r * n + pivots[r]] = 1;
      for (std::size_t f = 0; f < free.size(); ++f) basis[free[f].first * n + free[f].second] = digits[f];
      out.push_back(std::move(basis));
      std::size_t j = 0;
      while (j < digits.size() && ++digits[j] == p) digits[j++] = 0;
      if (j == digits.size()) break;
    }
    // next k-subset of {0..n-1}
    int i = k - 1;
    while (i >= 0 && pivots[i] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

SemistableTester::SemistableTester(const RepLayout& layout, const PrimeField& F, const StabilityCondition& z,
                                   std::uint64_t cap)
    : layout_(layout), F_(F) {
  const std::size_t nv = layout.dim.size();
  if (z.size() != nv) throw InvalidInput("stability condition does not match the quiver's vertices");
  std::uint64_t tuples = 1;
  for (std::size_t v = 0; v < nv; ++v) {
    const int n = layout.dim[v];
    std::vector<Subspace> subs;
    for (int k = 0; k <= n; ++k) {
      for (auto& basis : all_subspace_bases(F, n, k)) {
        Subspace s{k, std::move(basis), {}};
        if (k < n) {
          s.check.assign(static_cast<std::size_t>(n) * n, 0);
          if (k == 0) {
            for (int i = 0; i < n; ++i) s.check[i * n + i] = 1;
          } else {
            std::vector<std::uint32_t> copy = s.basis;
            std::vector<int> piv(n + 1);
            linalg::nullspace(F, copy.data(), k, n, s.check.data(), piv.data());
          }
          s.check.resize(static_cast<std::size_t>(n - k) * n);
        }
        subs.push_back(std::move(s));
      }
      if (subs.size() > cap) throw CapExceeded("subspace lattice exceeds the point budget", subs.size());
    }
    if (tuples > cap / subs.size()) throw CapExceeded("subspace lattice exceeds the point budget", cap + 1);
    tuples *= subs.size();
    subspaces_.push_back(std::move(subs));
  }
  const DimVector d(layout.dim);
  if (d.is_zero()) return;
  const Rational mu = slope(z, d);
  std::vector<int> choice(nv, 0);
  while (true) {
    std::vector<int> e(nv);
    for (std::size_t v = 0; v < nv; ++v) e[v] = subspaces_[v][choice[v]].dim;
    const DimVector ev(e);
    if (!ev.is_zero() && ev != d && slope(z, ev) > mu) candidates_.push_back(choice);
    std::size_t v = 0;
    while (v < nv && ++choice[v] == static_cast<int>(subspaces_[v].size())) choice[v++] = 0;
    if (v == nv) break;
  }
}

bool SemistableTester::invariant(const std::vector<int>& choice, const std::uint32_t* x, Workspace& ws) const {
  const std::uint64_t p = F_.p();
  for (const ArrowSlot& a : layout_.arrows) {
    const Subspace& us = subspaces_[a.source][choice[a.source]];
    const Subspace& ut = subspaces_[a.target][choice[a.target]];
    const int ds = a.cols, dt = a.rows;
    if (us.dim == 0 || ut.dim == dt) continue;
    const std::uint32_t* xa = x + a.offset;
    for (int r = 0; r < us.dim; ++r) {
      for (int i = 0; i < dt; ++i) {
        std::uint64_t acc = 0;
        for (int j = 0; j < ds; ++j) acc += static_cast<std::uint64_t>(xa[i * ds + j]) * us.basis[r * ds + j];
        ws.vec[i] = static_cast<std::uint32_t>(acc % p);
      }
      for (int h = 0; h < dt - ut.dim; ++h) {
        std::uint64_t acc = 0;
        for (int i = 0; i < dt; ++i) acc += static_cast<std::uint64_t>(ut.check[h * dt + i]) * ws.vec[i];
        if (acc % p != 0) return false;
      }
    }
  }
  return true;
}

bool SemistableTester::semistable(const std::uint32_t* x, Workspace& ws) const {
  for (const auto& c : candidates_) {
    if (invariant(c, x, ws)) return false;
  }
  return true;
}

namespace {

struct Generator {
  FpMatrix g;
  FpMatrix g_inv;
};

// diag(w,1,..), I + E_12, the transposition (12) and an n-cycle generate
// GL_n(F_p): the last two give all permutations, which conjugate I + E_12
// to every elementary transvection.
std::vector<Generator> gl_generators(const PrimeField& F, int n) {
  std::vector<FpMatrix> gens;
  if (n == 0) return {};
  FpMatrix diag = FpMatrix::identity(n);
  diag.at(0, 0) = F.primitive_root();
  gens.push_back(diag);
  if (n >= 2) {
    FpMatrix t = FpMatrix::identity(n);
    t.at(0, 1) = 1;
    gens.push_back(t);
    FpMatrix swap(n, n);
    for (int i = 2; i < n; ++i) swap.at(i, i) = 1;
    swap.at(0, 1) = swap.at(1, 0) = 1;
    gens.push_back(swap);
    FpMatrix cycle(n, n);
    for (int i = 0; i < n; ++i) cycle.at((i + 1) % n, i) = 1;
    gens.push_back(cycle);
  }
  std::vector<Generator> out;
  std::vector<std::uint32_t> scratch(2 * static_cast<std::size_t>(n) * n);
  for (auto& g : gens) {
    FpMatrix inv(n, n);
    linalg::inverse(F, g.data.data(), n, inv.data.data(), scratch.data());
    out.push_back({std::move(g), std::move(inv)});
  }
  return out;
}

}  // namespace

PivotOrbits::PivotOrbits(const RepLayout& layout, std::size_t arrow, const PrimeField& F)
    : arrow_(arrow), p_(F.p()), size_(layout.arrows[arrow].size()) {
  const ArrowSlot& slot = layout.arrows[arrow];
  const auto count = bounded_power(p_, size_, std::uint64_t{1} << 26);
  if (!count) throw CapExceeded("pivot orbit table too large", 0);
  const std::uint64_t n = *count;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  };
  // Each action is a function of the matrix: Y = L X R.
  struct Action {
    FpMatrix left, right;
  };
  std::vector<Action> actions;
  const int dt = slot.rows, ds = slot.cols;
  if (slot.source == slot.target) {
    for (auto& g : gl_generators(F, dt)) actions.push_back({g.g, g.g_inv});
  } else {
    for (auto& g : gl_generators(F, dt)) actions.push_back({g.g, FpMatrix::identity(ds)});
    for (auto& g : gl_generators(F, ds)) actions.push_back({FpMatrix::identity(dt), g.g_inv});
  }
  std::vector<std::uint32_t> x(size_), tmp(size_), y(size_);
  auto encode = [&](const std::vector<std::uint32_t>& m) {
    std::uint64_t idx = 0;
    for (std::size_t i = size_; i-- > 0;) idx = idx * p_ + m[i];
    return idx;
  };
  for (std::uint64_t i = 0; i < n; ++i) {
    decode(i, x.data());
    for (const auto& act : actions) {
      linalg::matmul(F, act.left.data.data(), x.data(), tmp.data(), dt, dt, ds);
      linalg::matmul(F, tmp.data(), act.right.data.data(), y.data(), dt, ds, ds);
      unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(encode(y)));
    }
  }
  std::vector<std::uint64_t> sizes(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) ++sizes[find(static_cast<std::uint32_t>(i))];
  for (std::uint64_t i = 0; i < n; ++i) {
    if (sizes[i] > 0) orbits_.push_back({i, sizes[i]});
  }
}

void PivotOrbits::decode(std::uint64_t index, std::uint32_t* matrix) const {
  for (std::size_t i = 0; i < size_; ++i) {
    matrix[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
}

void Tally::merge(const Tally& o) {
  evaluated += o.evaluated;
  points += o.points;
  semistable += o.semistable;
  aut_all += o.aut_all;
  aut_indec += o.aut_indec;
  aut_abs += o.aut_abs;
}

CensusPlan::CensusPlan(const CensusQuery& q, const CensusOptions& o)
    : query(q),
      options(o),
      enumerated(q.relations == Relations::preprojective ? double_quiver(q.quiver) : q.quiver),
      layout(enumerated, q.dim),
      field(q.p),
      filter(enumerated, layout, field, q.relations == Relations::preprojective, q.quiver.arrows().size(),
             q.constraint),
      end(layout, field, o.end_budget) {
  if (o.point_budget == 0 || o.end_budget == 0) throw InvalidInput("budgets must be positive");
  if (q.stability) stability.emplace(layout, field, *q.stability, o.point_budget);
}

void CensusPlan::visit(const std::uint32_t* x, u128 weight, const std::uint32_t* seed, int m,
                       const std::vector<char>& impose, std::optional<std::size_t> skip_arrow, Workspace& ws,
                       Tally& tally) const {
  ++tally.evaluated;
  if (!filter.accepts(x, ws, skip_arrow)) return;
  tally.points += weight;
  if (stability) {
    if (!stability->semistable(x, ws)) return;
    tally.semistable += weight;
  }
  if (query.classification == Classification::none) return;
  const EndMode mode = query.classification == Classification::full ? EndMode::full : EndMode::absolute;
  const int k = end.solve(x, seed, m, impose, ws);
  const EndInfo info = end.analyse(k, mode, ws);
  const u128 aut = weight * info.units;
  if (mode == EndMode::full) tally.aut_all += aut;
  if (info.indecomposable()) tally.aut_indec += aut;
  if (info.absolutely_indecomposable()) tally.aut_abs += aut;
}

}  // namespace qdt::detail

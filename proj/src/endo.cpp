#include <algorithm>

#include "qdt/census.hpp"
#include "qdt/detail/rep_space.hpp"

namespace qdt {

namespace detail {

namespace {

std::uint64_t saturating_power(std::uint64_t p, std::uint64_t k) {
  auto v = bounded_power(p, k, UINT64_MAX);
  return v ? *v : UINT64_MAX;
}

}  // namespace

EndSolver::EndSolver(const RepLayout& layout, const PrimeField& F, std::uint64_t end_budget)
    : layout_(layout), F_(F), end_budget_(end_budget) {}

int EndSolver::solve(const std::uint32_t* x, const std::uint32_t* seed, int m, const std::vector<char>& impose,
                     Workspace& ws) const {
  const std::size_t n = layout_.phi_size;
  const std::uint64_t p = F_.p();
  // Column j of the system is the image of seed_j under
  // phi -> (x_a phi_s - phi_t x_a)_a over the imposed arrows.
  int rows = 0;
  for (std::size_t a = 0; a < layout_.arrows.size(); ++a) {
    if (impose[a]) rows += static_cast<int>(layout_.arrows[a].size());
  }
  std::uint32_t* sys = ws.system.data();
  for (int j = 0; j < m; ++j) {
    const std::uint32_t* phi = seed + j * n;
    int r = 0;
    for (std::size_t ai = 0; ai < layout_.arrows.size(); ++ai) {
      if (!impose[ai]) continue;
      const ArrowSlot& a = layout_.arrows[ai];
      const std::uint32_t* xa = x + a.offset;
      const std::uint32_t* ps = phi + layout_.block_offset[a.source];
      const std::uint32_t* pt = phi + layout_.block_offset[a.target];
      for (int i = 0; i < a.rows; ++i) {
        for (int l = 0; l < a.cols; ++l, ++r) {
          std::uint64_t lhs = 0, rhs = 0;
          for (int k = 0; k < a.cols; ++k) lhs += static_cast<std::uint64_t>(xa[i * a.cols + k]) * ps[k * a.cols + l];
          for (int k = 0; k < a.rows; ++k) rhs += static_cast<std::uint64_t>(pt[i * a.rows + k]) * xa[k * a.cols + l];
          sys[r * m + j] = static_cast<std::uint32_t>((lhs % p + p - rhs % p) % p);
        }
      }
    }
  }
  int k;
  if (rows == 0) {
    k = m;
    std::fill(ws.null.begin(), ws.null.begin() + static_cast<std::size_t>(m) * m, 0u);
    for (int i = 0; i < m; ++i) ws.null[i * m + i] = 1;
  } else {
    k = linalg::nullspace(F_, sys, rows, m, ws.null.data(), ws.pivots.data());
  }
  for (int i = 0; i < k; ++i) {
    std::uint32_t* out = ws.basis.data() + i * n;
    for (std::size_t c = 0; c < n; ++c) {
      std::uint64_t acc = 0;
      for (int j = 0; j < m; ++j) acc += static_cast<std::uint64_t>(ws.null[i * m + j]) * seed[j * n + c];
      out[c] = static_cast<std::uint32_t>(acc % p);
    }
  }
  return k;
}

bool EndSolver::element_invertible(const std::uint32_t* e, Workspace& ws) const {
  for (std::size_t v = 0; v < layout_.dim.size(); ++v) {
    if (!linalg::invertible(F_, e + layout_.block_offset[v], layout_.dim[v], ws.m3.data())) return false;
  }
  return true;
}

bool EndSolver::element_nilpotent(const std::uint32_t* e, Workspace& ws) const {
  for (std::size_t v = 0; v < layout_.dim.size(); ++v) {
    if (!linalg::nilpotent(F_, e + layout_.block_offset[v], layout_.dim[v], ws.m3.data())) return false;
  }
  return true;
}

EndInfo EndSolver::analyse(int k, EndMode mode, Workspace& ws) const {
  EndInfo info;
  info.dim = k;
  if (k == 0) {
    info.units = 1;
    return info;
  }
  const std::uint32_t p = F_.p();
  if (k == 1) {
    info.radical_dim = 0;
    info.residue_dim = 1;
    info.units = p - 1;
    return info;
  }
  const std::size_t n = layout_.phi_size;
  if (mode == EndMode::absolute) {
    // Fitting: in a local algebra every element is a unit or nilpotent.
    for (int i = 0; i < k; ++i) {
      const std::uint32_t* b = ws.basis.data() + i * n;
      if (!element_invertible(b, ws) && !element_nilpotent(b, ws)) {
        info.decomposable = true;
        return info;
      }
    }
  }
  const auto total = bounded_power(p, k, end_budget_);
  if (!total) {
    throw CapExceeded("endomorphism algebra of dimension " + std::to_string(k) + " exceeds the end budget",
                      saturating_power(p, k));
  }
  std::uint32_t* e = ws.element.data();
  std::fill(e, e + n, 0u);
  std::fill(ws.digits.begin(), ws.digits.begin() + k, 0u);
  std::uint64_t units = 0, nonunits = 0;
  bool local = true;
  for (std::uint64_t step = 0; step < *total; ++step) {
    if (element_invertible(e, ws)) {
      ++units;
    } else {
      ++nonunits;
      if (local && !element_nilpotent(e, ws)) {
        local = false;
        if (mode == EndMode::absolute) {
          info.decomposable = true;
          return info;
        }
      }
    }
    for (int j = 0; j < k; ++j) {
      const std::uint32_t* b = ws.basis.data() + j * n;
      for (std::size_t c = 0; c < n; ++c) e[c] = F_.add(e[c], b[c]);
      if (++ws.digits[j] < p) break;
      ws.digits[j] = 0;
    }
  }
  info.units = units;
  if (!local) {
    info.decomposable = true;
    return info;
  }
  // Local: the non-units form the radical, a subspace of size p^r.
  int r = 0;
  std::uint64_t size = 1;
  while (size < nonunits) {
    size *= p;
    ++r;
  }
  if (size != nonunits) throw ConsistencyError("non-units of a local endomorphism algebra do not form a subspace");
  info.radical_dim = r;
  info.residue_dim = k - r;
  return info;
}

}  // namespace detail

void MatrixRep::validate() const {
  quiver.check_dim(dim);
  const PrimeField F(p);
  if (mats.size() != quiver.arrows().size()) throw InvalidInput("representation needs one matrix per arrow");
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const auto& a = quiver.arrows()[i];
    const auto& m = mats[i];
    if (m.rows != dim[a.target] || m.cols != dim[a.source]) {
      throw InvalidInput("matrix for arrow " + a.label + " has the wrong shape");
    }
    for (auto v : m.data) {
      if (v >= p) throw InvalidInput("matrix entry out of range for arrow " + a.label);
    }
  }
}

MatrixRep MatrixRep::conjugated(const std::vector<FpMatrix>& g) const {
  const PrimeField F(p);
  MatrixRep out = *this;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const auto& a = quiver.arrows()[i];
    const int n = dim[a.source];
    FpMatrix inv(n, n);
    std::vector<std::uint32_t> scratch(2 * static_cast<std::size_t>(n) * n + 1);
    if (!linalg::inverse(F, g[a.source].data.data(), n, inv.data.data(), scratch.data())) {
      throw InvalidInput("conjugating element is not invertible");
    }
    out.mats[i] = multiply(F, multiply(F, g[a.target], mats[i]), inv);
  }
  return out;
}

namespace {

void flatten(const MatrixRep& rho, const detail::RepLayout& layout, std::vector<std::uint32_t>& x) {
  x.assign(std::max<std::size_t>(1, layout.entries), 0);
  for (std::size_t i = 0; i < rho.mats.size(); ++i) {
    std::copy(rho.mats[i].data.begin(), rho.mats[i].data.end(), x.begin() + layout.arrows[i].offset);
  }
}

std::vector<std::uint32_t> identity_seed(std::size_t n) {
  std::vector<std::uint32_t> seed(std::max<std::size_t>(1, n * n), 0);
  for (std::size_t i = 0; i < n; ++i) seed[i * n + i] = 1;
  return seed;
}

}  // namespace

EndAlgebra endomorphism_algebra(const MatrixRep& rho, std::uint64_t end_budget) {
  rho.validate();
  const detail::RepLayout layout(rho.quiver, rho.dim);
  const PrimeField F(rho.p);
  std::vector<std::uint32_t> x;
  flatten(rho, layout, x);
  detail::Workspace ws(layout);
  const detail::EndSolver solver(layout, F, end_budget);
  const auto seed = identity_seed(layout.phi_size);
  const std::vector<char> impose(layout.arrows.size(), 1);
  const int k = solver.solve(x.data(), seed.data(), static_cast<int>(layout.phi_size), impose, ws);
  const std::size_t n = layout.phi_size;

  EndAlgebra out;
  std::vector<std::vector<std::uint32_t>> flat;
  for (int i = 0; i < k; ++i) {
    const std::uint32_t* b = ws.basis.data() + i * n;
    flat.emplace_back(b, b + n);
    std::vector<FpMatrix> blocks;
    for (std::size_t v = 0; v < layout.dim.size(); ++v) {
      const int d = layout.dim[v];
      const std::uint32_t* start = b + layout.block_offset[v];
      blocks.emplace_back(d, d, std::vector<std::uint32_t>(start, start + static_cast<std::size_t>(d) * d));
    }
    out.basis.push_back(std::move(blocks));
  }
  const detail::EndInfo info = solver.analyse(k, detail::EndMode::full, ws);
  out.unit_count = static_cast<unsigned long>(info.units);
  if (k == 0) {
    out.local = false;
    return out;
  }
  out.local = !info.decomposable;
  if (out.local) {
    out.radical_dim = info.radical_dim;
    return out;
  }
  // J = {a : b a nilpotent for every b}, the largest nil left ideal.
  const auto pairs = detail::bounded_power(rho.p, 2 * static_cast<std::uint64_t>(k), end_budget);
  if (!pairs) throw CapExceeded("radical of a non-local endomorphism algebra exceeds the end budget", end_budget + 1);
  std::vector<std::vector<std::uint32_t>> elements;
  {
    std::vector<std::uint32_t> e(n, 0), digits(k, 0);
    const std::uint64_t count = *detail::bounded_power(rho.p, k, end_budget);
    for (std::uint64_t s = 0; s < count; ++s) {
      elements.push_back(e);
      for (int j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < n; ++c) e[c] = F.add(e[c], flat[j][c]);
        if (++digits[j] < rho.p) break;
        digits[j] = 0;
      }
    }
  }
  std::vector<std::uint32_t> prod(n);
  std::uint64_t radical = 0;
  for (const auto& a : elements) {
    bool in_radical = true;
    for (const auto& b : elements) {
      for (std::size_t v = 0; v < layout.dim.size() && in_radical; ++v) {
        const int d = layout.dim[v];
        const auto off = layout.block_offset[v];
        linalg::matmul(F, b.data() + off, a.data() + off, prod.data() + off, d, d, d);
      }
      if (!solver.element_nilpotent(prod.data(), ws)) {
        in_radical = false;
        break;
      }
    }
    if (in_radical) ++radical;
  }
  int r = 0;
  for (std::uint64_t s = 1; s < radical; s *= rho.p) ++r;
  out.radical_dim = r;
  return out;
}

Classified classify(const MatrixRep& rho, std::uint64_t end_budget) {
  rho.validate();
  const detail::RepLayout layout(rho.quiver, rho.dim);
  const PrimeField F(rho.p);
  std::vector<std::uint32_t> x;
  flatten(rho, layout, x);
  detail::Workspace ws(layout);
  const detail::EndSolver solver(layout, F, end_budget);
  const auto seed = identity_seed(layout.phi_size);
  const std::vector<char> impose(layout.arrows.size(), 1);
  const int k = solver.solve(x.data(), seed.data(), static_cast<int>(layout.phi_size), impose, ws);
  const detail::EndInfo info = solver.analyse(k, detail::EndMode::absolute, ws);
  Classified out;
  out.decomposable = !info.indecomposable();
  if (!out.decomposable) out.residue_dim = info.residue_dim;
  return out;
}

}  // namespace qdt

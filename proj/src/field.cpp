#include "qdt/field.hpp"

#include <algorithm>
#include <cstring>

namespace qdt {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 2; out.size() < count; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (p > 65521) throw InvalidInput("prime fields are limited to p < 2^16");
  inverse_.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a) {
    // a^(p-2) by repeated squaring
    std::uint64_t result = 1, base = a;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1u) result = result * base % p;
      base = base * base % p;
    }
    inverse_[a] = static_cast<std::uint32_t>(result);
  }
  for (std::uint32_t g = 1; g < p; ++g) {
    std::uint32_t x = 1, order = 0;
    do {
      x = mul(x, g);
      ++order;
    } while (x != 1);
    if (order == p - 1) {
      root_ = g;
      break;
    }
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidInput("inverse of zero in a prime field");
  return inverse_[a];
}

Integer gl_order(const DimVector& d, std::uint32_t p) {
  Integer order = 1;
  for (int n : d.entries()) {
    Integer pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n));
    for (int k = 0; k < n; ++k) {
      Integer pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
      order *= pn - pk;
    }
  }
  return order;
}

LaurentPoly gl_order_poly(const DimVector& d) {
  LaurentPoly order(1);
  for (int n : d.entries()) {
    for (int k = 0; k < n; ++k) order *= LaurentPoly::q_power(n) - LaurentPoly::q_power(k);
  }
  return order;
}

FpMatrix::FpMatrix(int r, int c, std::vector<std::uint32_t> values) : rows(r), cols(c), data(std::move(values)) {
  if (data.size() != static_cast<std::size_t>(r) * c) throw InvalidInput("matrix data does not match its shape");
}

FpMatrix FpMatrix::identity(int n) {
  FpMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix multiply(const PrimeField& F, const FpMatrix& a, const FpMatrix& b) {
  if (a.cols != b.rows) throw InvalidInput("matrix shapes do not compose");
  FpMatrix c(a.rows, b.cols);
  linalg::matmul(F, a.data.data(), b.data.data(), c.data.data(), a.rows, a.cols, b.cols);
  return c;
}

namespace linalg {

namespace {
constexpr int kMaxColumns = 512;
}  // namespace

void matmul(const PrimeField& F, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, int n, int k,
            int m) {
  const std::uint64_t p = F.p();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::uint64_t acc = 0;
      for (int l = 0; l < k; ++l) acc += static_cast<std::uint64_t>(a[i * k + l]) * b[l * m + j];
      c[i * m + j] = static_cast<std::uint32_t>(acc % p);
    }
  }
}

int rref(const PrimeField& F, std::uint32_t* m, int rows, int cols, int* pivots) {
  const std::uint32_t p = F.p();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r * cols + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int c = 0; c < cols; ++c) std::swap(m[pivot * cols + c], m[rank * cols + c]);
    }
    const std::uint32_t inv = F.inv(m[rank * cols + col]);
    for (int c = col; c < cols; ++c) m[rank * cols + c] = F.mul(m[rank * cols + c], inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::uint32_t factor = m[r * cols + col];
      if (factor == 0) continue;
      const std::uint32_t nf = p - factor;
      for (int c = col; c < cols; ++c) {
        m[r * cols + c] = static_cast<std::uint32_t>((m[r * cols + c] + static_cast<std::uint64_t>(nf) * m[rank * cols + c]) % p);
      }
    }
    pivots[rank++] = col;
  }
  return rank;
}

int nullspace(const PrimeField& F, std::uint32_t* m, int rows, int cols, std::uint32_t* out, int* pivots) {
  const int rank = rref(F, m, rows, cols, pivots);
  if (cols > kMaxColumns) throw InvalidInput("nullspace: too many columns");
  bool is_pivot[kMaxColumns] = {};
  for (int i = 0; i < rank; ++i) is_pivot[pivots[i]] = true;
  int count = 0;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::uint32_t* v = out + static_cast<std::size_t>(count) * cols;
    std::fill(v, v + cols, 0u);
    v[free] = 1;
    for (int i = 0; i < rank; ++i) v[pivots[i]] = F.neg(m[i * cols + free]);
    ++count;
  }
  return count;
}

bool invertible(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* scratch) {
  if (n == 0) return true;
  if (n == 1) return a[0] != 0;
  if (n == 2) {
    const std::uint64_t p = F.p();
    const std::uint64_t det = (static_cast<std::uint64_t>(a[0]) * a[3] + p * p - static_cast<std::uint64_t>(a[1]) * a[2]) % p;
    return det != 0;
  }
  std::memcpy(scratch, a, sizeof(std::uint32_t) * n * n);
  int pivots[64];
  return rref(F, scratch, n, n, pivots) == n;
}

bool nilpotent(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* scratch) {
  if (n == 0) return true;
  if (n == 1) return a[0] == 0;
  if (n == 2) {
    // trace and determinant both vanish
    const std::uint64_t p = F.p();
    const std::uint64_t det = (static_cast<std::uint64_t>(a[0]) * a[3] + p * p - static_cast<std::uint64_t>(a[1]) * a[2]) % p;
    return det == 0 && (a[0] + a[3]) % p == 0;
  }
  std::uint32_t* cur = scratch;
  std::uint32_t* next = scratch + n * n;
  std::memcpy(cur, a, sizeof(std::uint32_t) * n * n);
  // a^(2^k) for 2^k >= n
  for (int power = 1; power < n; power *= 2) {
    matmul(F, cur, cur, next, n, n, n);
    std::swap(cur, next);
  }
  for (int i = 0; i < n * n; ++i) {
    if (cur[i] != 0) return false;
  }
  return true;
}

bool inverse(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* out, std::uint32_t* scratch) {
  // [a | I] -> [I | a^-1]
  const int w = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      scratch[i * w + j] = a[i * n + j];
      scratch[i * w + n + j] = (i == j) ? 1 : 0;
    }
  }
  int pivots[64];
  const int rank = rref(F, scratch, n, w, pivots);
  if (rank < n || pivots[n - 1] != n - 1) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i * n + j] = scratch[i * w + n + j];
  }
  return true;
}

}  // namespace linalg

}  // namespace qdt

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdt/laurent.hpp"

namespace qdt {

bool is_prime(std::uint64_t n);
// 2, 3, 5, 7, ...
std::vector<std::uint32_t> first_primes(std::size_t count);

// The prime field F_p with canonical residues 0..p-1.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t primitive_root() const { return root_; }

 private:
  std::uint32_t p_;
  std::uint32_t root_ = 1;
  std::vector<std::uint32_t> inverse_;
};

// |GL_d(F_p)| = prod_i prod_{k<d_i} (p^{d_i} - p^k)
Integer gl_order(const DimVector& d, std::uint32_t p);
// The same product as a polynomial in q = u^2.
LaurentPoly gl_order_poly(const DimVector& d);

// Dense row-major matrix over a prime field.
struct FpMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> data;

  FpMatrix() = default;
  FpMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  FpMatrix(int r, int c, std::vector<std::uint32_t> values);
  static FpMatrix identity(int n);

  std::uint32_t& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::uint32_t at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const FpMatrix&) const = default;
};

FpMatrix multiply(const PrimeField& F, const FpMatrix& a, const FpMatrix& b);

// Raw kernels on row-major buffers. Callers own all storage so the census
// inner loops never allocate.
namespace linalg {

// c (n x m) = a (n x k) * b (k x m)
void matmul(const PrimeField& F, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, int n, int k,
            int m);
// In-place reduced row echelon form; writes pivot columns, returns the rank.
int rref(const PrimeField& F, std::uint32_t* m, int rows, int cols, int* pivots);
// Basis of {x : M x = 0} written row by row into `out` (capacity
// cols * cols); M is destroyed. Returns the nullity.
int nullspace(const PrimeField& F, std::uint32_t* m, int rows, int cols, std::uint32_t* out, int* pivots);
// scratch needs n*n entries.
bool invertible(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* scratch);
// scratch needs 2*n*n entries.
bool nilpotent(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* scratch);
// Matrix inverse; returns false when singular. scratch needs 2*n*n entries.
bool inverse(const PrimeField& F, const std::uint32_t* a, int n, std::uint32_t* out, std::uint32_t* scratch);

}  // namespace linalg

}  // namespace qdt

#pragma once

// Exact dense linear algebra for homology: ranks and span tests over Q and
// F_p, kernels, lattice membership and Smith diagonals over Z.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "tinv/ring.hpp"

namespace tinv {

/// Dense row-major matrix of exact rationals. Over F_p entries are kept as
/// canonical integer representatives.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<mpq_class> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  mpq_class& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const mpq_class& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

using Vec = std::vector<mpq_class>;

/// Rank over a field (rationals or a prime field).
int rank(const Matrix& m, const Coeff& k);

/// True when v lies in the column span of m over the field.
bool in_column_span(const Matrix& m, const Vec& v, const Coeff& k);

/// Rank over the field of a sparse matrix given by rows (column -> value).
using SparseRow = std::map<int, mpq_class>;
int sparse_rank(const std::vector<SparseRow>& rows, const Coeff& k);

/// Basis of the kernel over the field.
std::vector<Vec> kernel(const Matrix& m, const Coeff& k);

/// Integer lattice tools. Vectors have integer entries.
using IVec = std::vector<mpz_class>;

/// Basis of the integer kernel {u : m u = 0} (m has integer entries).
std::vector<IVec> integer_kernel(const Matrix& m);

/// Lattice spanned by integer vectors of a fixed dimension, kept in Hermite
/// normal form so membership is a triangular solve.
class Lattice {
 public:
  explicit Lattice(int dim) : dim_(dim) {}
  void add(const IVec& v);
  bool contains(const IVec& v) const;
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<IVec>& basis() const { return basis_; }
  /// Integer coordinates of v in the basis; empty when v is not in the lattice.
  std::optional<IVec> coordinates(const IVec& v) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<IVec> basis_;  // echelon rows with distinct pivots, positive pivots
  std::vector<int> pivot_;
};

/// Nonzero invariant factors of an integer matrix (Smith normal form).
std::vector<mpz_class> smith_diagonal(const Matrix& m);

}  // namespace tinv

#pragma once

// Invariants read off the assembled complex: t over a field, the integer
// invariants T_i, spectral sequence pages and total homology checks.

#include <map>
#include <utility>
#include <vector>

#include "tinv/linalg.hpp"
#include "tinv/scan.hpp"

namespace tinv {

/// Bigraded ranks keyed by (internal, filtration).
using RankTable = std::map<std::pair<int, int>, int>;

struct Page {
  int r = 0;
  RankTable ranks;
  int total() const;
};

/// Khovanov-style Poincare table keyed by (q, h) with q = internal + 3 h.
RankTable to_qh(const RankTable& t);

/// Degree-k piece of a complex: basis elements x^m g with deg(g) - 2m = k.
struct GradedPiece {
  int degree = 0;
  std::vector<std::pair<int, int>> basis;  // (generator, power of x)
  std::map<std::pair<int, int>, int> index;
};

GradedPiece graded_piece(const ReducedComplex& c, int k);
/// Matrix of D from the degree-k piece to the degree-(k-3) piece.
Matrix piece_matrix(const ReducedComplex& c, const GradedPiece& src, const GradedPiece& tgt);

/// Largest n such that some cycle of filtration >= n generates the total
/// homology (reduced complex over a field). Brute force by ranks.
int t_invariant(const ReducedComplex& c, const Coeff& k);

/// Filtration of the surviving generator after filtered Gaussian
/// elimination over the field.
int t_fast(const ReducedComplex& c, const Coeff& k);

/// Pages E_1 .. E_{r_max} over a field. E_r is the generator table left
/// after cancelling every entry of filtration shift below r.
std::vector<Page> pages(const ReducedComplex& c, const Coeff& k, int r_max);

/// E_2 Poincare table in (q, h).
RankTable e2_poincare(const ReducedComplex& c, const Coeff& k);

/// T_0 .. T_{i_max} from the unreduced complex over Z[x].
std::vector<int> T_invariants(const ReducedComplex& c, int i_max);

/// Total homology ranks over the field in internal degrees 0, -1, ..., -window
/// (unreduced complexes), plus a torsion check over Z.
struct TotalHomology {
  std::map<int, int> ranks;  // internal degree -> rank
  bool torsion_free = true;
};
TotalHomology total_homology(const ReducedComplex& c, const Coeff& k, int window);

/// Expected ranks of Z[x_1..x_c]/(x_i^2 - x_j^2){c-1} by internal degree.
std::map<int, int> expected_link_homology(int components, int window);

/// t of the torus knot T(p, q) from the recurrence
/// t(T_{p,p+q}) = t(T_{p,q}) + floor(p^2/2) with t(T_{1,n}) = 0.
int torus_t_expected(int p, int q);

}  // namespace tinv

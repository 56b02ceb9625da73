#pragma once

// Independent cube-of-resolutions Khovanov homology, kept deliberately
// naive: every vertex of the cube, circles labelled by the Frobenius
// algebra, ranks per bigrading. Used only to check the main engine.

#include <map>
#include <utility>

#include "tinv/invariants.hpp"
#include "tinv/tangle.hpp"

namespace tinv {

enum class KhVariant {
  Standard,  // A = R[X]/(X^2)
  F3,        // A = R[h][X]/(X^2 - h) at h = 1; only the homological grading survives
};

inline constexpr int kOracleCrossingCap = 12;

/// Bigraded Khovanov homology keyed by (q, h). The reduced theory marks the
/// circle through edge 0 and is normalized so the unknot sits at (0, 0).
RankTable kh_homology(const Diagram& d, KhVariant variant, bool reduced, const Coeff& k);

/// Elements of Z[h][x]/(x^2 - h) as c0 + c1 x with coefficients in Z[h]
/// (variable 0), and of its tensor square as sum c_ij x^i (x) x^j.
struct F3Elem {
  Poly c0, c1;
  bool operator==(const F3Elem&) const = default;
};
struct F3Pair {
  Poly c[2][2];
  bool operator==(const F3Pair& o) const;
};

F3Elem f3_merge(const F3Pair& a);
F3Pair f3_split(const F3Elem& a);

/// Jones polynomial through the Kauffman bracket, as a Laurent polynomial in
/// q with V(t) evaluated at t = q^2. Keys are powers of q.
std::map<int, long> jones_polynomial(const Diagram& d);

/// Graded Euler characteristic sum (-1)^h q^j rank of a (q, h) table.
std::map<int, long> euler_characteristic(const RankTable& qh);

}  // namespace tinv

#pragma once

// Classical invariants from a diagram: the signature through the Goeritz
// form and the Gordon-Litherland correction, band Euler numbers and the
// genus bounds derived from t and T_i.

#include <vector>

#include "tinv/linalg.hpp"
#include "tinv/tangle.hpp"

namespace tinv {

struct GoeritzData {
  std::vector<int> color;  // per region, 0 = white, 1 = shaded
  std::vector<int> eta;    // Goeritz index of each crossing
  std::vector<bool> type_two;  // oriented smoothing merges the shaded corners
  Matrix goeritz;          // reduced Goeritz matrix (one white region dropped)
  int mu = 0;              // correction term
};

GoeritzData goeritz(const DecoratedDiagram& dd);

/// Signature of a symmetric rational matrix by exact congruence
/// diagonalization.
int matrix_signature(const Matrix& m);

/// Knot signature, normalized so that the positive trefoil has -2.
int signature(const Diagram& d);

/// Normal Euler number bookkeeping of a band: e = w0 - w1.
inline int band_euler(int w0, int w1) { return w0 - w1; }

/// ceil(|t + sigma| / 2).
int gamma4_lower(int t, int sigma);

/// 1 + max{i : T_i != 0}, or 0 when all vanish. Throws unless the sequence
/// ends in 0.
int g4_lower(const std::vector<int>& T);

}  // namespace tinv

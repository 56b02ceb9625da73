#pragma once

// Assembly of the knot complex. Every vertex of the cube of resolutions is a
// Koszul factorization over the region variables; each is reduced by an
// explicit chain of retracts (variable elimination, then delooping) and the
// saddle maps are transported through them with the perturbation lemma.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tinv/complex.hpp"
#include "tinv/koszul.hpp"
#include "tinv/tangle.hpp"

namespace tinv {

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A filtered complex over Z (reduced theory) or Z[x] (unreduced theory; x is
/// the basepoint variable and acts by multiplication). Entries have internal
/// degree -3 and strictly positive filtration shift.
struct ReducedComplex {
  std::vector<Bidegree> gens;
  SparseMap d;
  bool reduced = true;
  int x_var = -1;  // variable index of x, or -1 in the reduced theory
  int n_crossings = 0;

  int rank() const { return static_cast<int>(gens.size()); }
  /// Nonzero filtration shifts present in d.
  std::vector<int> shifts() const;
  bool squares_to_zero() const;
};

struct ScanOptions {
  bool reduced = true;
  /// Cancel unit entries of minimal filtration shift after assembly.
  bool cancel = true;
  /// Abort when the cube has more generators than this.
  std::size_t cap = std::size_t(1) << 20;
  /// Abort when resident memory exceeds this many bytes; 0 means
  /// default_memory_budget().
  std::size_t memory_budget = 0;
  /// Reserved for ordering heuristics; the assembly is order-independent.
  std::uint64_t seed = 0;
};

/// Default cap, overridden by the TINV_CAP environment variable.
std::size_t default_cap();

/// TINV_MEM_MB if set, else three quarters of the memory available at the
/// first call; 0 when neither is known (no limit).
std::size_t default_memory_budget();

struct ScanStats {
  std::size_t cube_generators = 0;     // sum over vertices of the Koszul rank
  std::size_t vertex_generators = 0;   // after per-vertex reduction
  std::size_t final_generators = 0;    // after unit cancellation
};

ReducedComplex scan(const DecoratedDiagram& dd, const ScanOptions& opt, ScanStats* stats = nullptr);

/// Reduction of a single cube vertex; exposed for tests.
struct VertexReduction {
  Reduction red;
  int num_circles = 0;
  int x_var = -1;
};
VertexReduction reduce_vertex(const DecoratedDiagram& dd, std::uint32_t vertex, bool reduced);

/// Crossing order for assembly. The global cube construction does not depend
/// on the order, so this returns crossings sorted by a greedy frontier
/// heuristic only to keep the bookkeeping deterministic.
std::vector<int> choose_order(const DecoratedDiagram& dd);

/// Unit cancellation over Z[x] on entries of the given shift; returns the
/// number of cancelled pairs.
int cancel_units(ReducedComplex& c, int shift);

}  // namespace tinv

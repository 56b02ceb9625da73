#pragma once

// Self-checks shared by the unit tests, the `verify` command and the
// acceptance runner: local algebra identities, retract identities, closed
// diagrams, oracle comparisons, invariance under diagram moves and the
// structural properties of the invariants.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tinv/koszul.hpp"
#include "tinv/report.hpp"
#include "tinv/tangle.hpp"

namespace tinv {

struct CheckResult {
  explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool ok = true;
  int cases = 0;
  std::vector<std::string> failures;
  std::string note;
  double seconds = 0;

  void expect(bool cond, const std::string& what);
};

// ---------------------------------------------------------------- retracts

/// SDR identities of one move between Koszul states s and t on probe
/// vectors; returns an empty string on success. `dead` lists variables
/// already eliminated, which probes avoid.
std::string check_move(const KoszulState& s, const KoszulState& t, const Move& m, int nvars, std::vector<int> dead = {});

/// check_move on every step of a reduction plus the composite identities.
std::string check_reduction(const Reduction& r, int nvars);

/// Random filtered complex with D^2 = 0 of rank 2 * pairs + free_gens:
/// cancelling pairs and free generators conjugated by a filtered
/// unitriangular change of basis.
MultiFact random_filtered_complex(std::mt19937& rng, int pairs, int free_gens);

// ---------------------------------------------------------------- data

struct KnotRecord {
  std::string name;
  std::string format;
  std::string payload;
  Diagram diagram;
  int crossings = 0;
  bool alternating = false;
  int sigma = 0;
};

/// Reads a bundled table (name, format, payload, crossings, alternating,
/// sigma). Throws ParseError naming the offending line.
std::vector<KnotRecord> load_knots(const std::string& path);

/// Directory of the bundled tables.
std::string data_dir();

/// Memoized complexes keyed by diagram, theory and cancellation.
class ComplexCache {
 public:
  const ReducedComplex& get(const Diagram& d, bool reduced, bool cancel = true);
  ComplexPair pair(const Diagram& d);

 private:
  std::map<std::string, ReducedComplex> store_;
};

// ---------------------------------------------------------------- suites

/// Elementary factorizations, local maps, Koszul homotopies, basis changes
/// and retract identities on random complexes.
CheckResult local_suite();

/// Delooping of a single circle and the homology of crossingless unlinks.
CheckResult delooping_suite();

/// Reduced E_2 over Q and F_2 against the cube-of-resolutions oracle.
CheckResult oracle_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache);

/// t = -sigma and vanishing gamma_4 bound on alternating knots.
CheckResult alternating_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache);

/// t of torus knots against the recurrence; names must read Tp_q.
CheckResult torus_suite(const std::vector<KnotRecord>& torus, ComplexCache& cache);

/// T_i properties with i_max = 3 and fast path against the uncancelled
/// complex on knots with at most `brute_crossings` crossings.
CheckResult ti_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache, int brute_crossings = 6);

/// Reidemeister-related braid pairs and crossing-change sandwiches.
CheckResult invariance_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache);

/// Odd filtration shifts and total homology of every knot.
CheckResult parity_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache);

/// Stretch example: the 2-twisted positive Whitehead double of the right
/// trefoil, its unreduced E_2 page against the published table and t = 2.
CheckResult whitehead_suite();

}  // namespace tinv

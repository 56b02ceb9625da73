#pragma once

// One-stop computation of every invariant of a knot diagram, with the
// internal cross-checks (fast t against brute-force t, sign and
// monotonicity of T_i) that turn silent errors into exceptions.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tinv/invariants.hpp"

namespace tinv {

/// An internal identity failed (t_fast differs from t, T_i out of range, ...).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReportOptions {
  /// Fields for t; names "Q", "F2", "F3".
  std::vector<std::string> fields{"Q"};
  /// Largest i for T_i; negative skips the unreduced computation.
  int i_max = 4;
  bool e2 = true;
  ScanOptions scan;
};

struct InvariantReport {
  std::string name;
  std::string input;
  std::map<std::string, int> t;
  std::vector<int> T;
  int sigma = 0;
  int gamma4_lb = 0;
  std::optional<int> g4_lb;  // empty when T was skipped or has not reached 0
  RankTable e2;              // (q, h) over Q
  std::uint64_t seed = 0;
  std::map<std::string, double> timings;
};

Coeff field_by_name(const std::string& name);

/// Complexes a report is computed from; either may be supplied precomputed.
struct ComplexPair {
  std::optional<ReducedComplex> reduced, unreduced;
};

InvariantReport compute_report(const Diagram& d, const ReportOptions& opt, ComplexPair* cache = nullptr);

/// Stable JSON rendering; timings are included only on request so that
/// identical jobs give byte-identical output.
nlohmann::ordered_json report_json(const InvariantReport& r, bool with_timings);

/// Checks the structural properties of a T sequence; returns an empty string
/// when they hold.
std::string check_T_sequence(const std::vector<int>& T);

}  // namespace tinv

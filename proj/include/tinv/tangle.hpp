#pragma once

// Link diagrams: PD and braid input, orientation and signs, planar faces,
// basepoints, and the elementary factorizations with their local maps.

#include <array>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinv/complex.hpp"

namespace tinv {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diagram the engine cannot handle (split diagrams with crossings, too many
/// regions for the variable index space).
class UnsupportedDiagram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeEnd {
  int crossing = -1;
  int slot = -1;
};

/// A PD-coded link diagram. X(a, b, c, d) lists edges counterclockwise,
/// starting with the incoming under-strand; edges are renumbered 0..E-1 in
/// order of their labels.
struct Diagram {
  std::vector<std::array<int, 4>> crossings;
  int num_edges = 0;
  int free_loops = 0;  // crossingless components
  std::vector<int> labels;  // original label of each edge
  std::vector<EdgeEnd> tail, head;  // orientation of each edge
  std::vector<int> signs;  // +1 when the over-strand runs d -> b
  std::vector<int> component;  // component index of each edge
  int num_components = 0;

  int num_crossings() const { return static_cast<int>(crossings.size()); }
  int n_plus() const;
  int n_minus() const;
  int writhe() const { return n_plus() - n_minus(); }
  bool is_knot() const { return num_components == 1; }

  /// PD text with 1-based consecutive labels.
  std::string to_pd() const;
  Diagram mirror() const;
  /// Switches over and under at one crossing.
  Diagram crossing_change(int c) const;
};

Diagram parse_pd(const std::string& text);
/// Braid word with signed 1-based generators ("1 -2 1"); closure on `strands`.
Diagram parse_braid(const std::string& word, int strands);
Diagram braid_closure(const std::vector<int>& word, int strands);
/// Parses `payload` as format "pd" or "braid"; strands <= 0 infers the
/// strand count from the largest generator.
Diagram parse_input(const std::string& format, const std::string& payload, int strands = 0);

/// One line of a diagram table: name<TAB>format<TAB>payload[<TAB>extra...].
struct TableLine {
  int line = 0;
  std::string name, format, payload;
  std::vector<std::string> extra;
};
/// Reads a table, skipping blank lines and lines starting with '#'. Throws
/// ParseError naming the line for rows with fewer than three fields.
std::vector<TableLine> read_table(std::istream& in);

/// Crossingless diagram of n disjoint circles.
Diagram unlink(int n);
/// Builds a Diagram from 0-based crossing tuples, inferring orientation.
Diagram make_diagram(std::vector<std::array<int, 4>> crossings, int free_loops = 0);

/// Faces, basepoints and dotted arcs.
struct DecoratedDiagram {
  Diagram diagram;
  int num_regions = 0;
  /// corner[c][i] is the region between slots i and i+1 of crossing c.
  std::vector<std::array<int, 4>> corner;
  std::vector<int> edge_left, edge_right;
  std::vector<int> basepoints;  // least edge of each component
  /// Dotted arcs as (region the arc runs through, edge a, edge b); used
  /// for crossingless diagrams, which need arcs to be connected.
  struct Arc {
    int region = 0;
    int edge_a = 0;
    int edge_b = 0;
  };
  std::vector<Arc> arcs;

  int basepoint() const { return basepoints.at(0); }
  /// Regions (r_bc, r_cd, r_da, r_ab) around crossing c.
  std::array<int, 4> crossing_regions(int c) const;
};

DecoratedDiagram compute_regions(const Diagram& d);
/// Adds the dotted arcs a crossingless diagram needs to be connected.
DecoratedDiagram place_arcs(DecoratedDiagram dd);
inline DecoratedDiagram decorate(const Diagram& d) { return place_arcs(compute_regions(d)); }

// ---------------------------------------------------------------- local pieces

enum class PieceKind { D0, D1, Positive, Negative, Arc };

/// The four region variables in standard position.
using PieceVars = std::array<Poly, 4>;

PieceVars symbolic_vars();
Poly piece_potential(const PieceVars& x);

/// C(D0) = K(x0 - x2, (x1 - x3)(x1 - x2 + x3 - x0)), C(D1) with the roles of
/// the pairs exchanged. C(D+) = C(D0){1} + C(D1){-1,1} with d1 the saddle;
/// C(D-) is C(D+) with the variables rotated one step. An arc is D0 with x0 = x2.
MultiFact elementary(PieceKind kind, const PieceVars& x);

struct LocalMaps {
  SparseMap saddle_01;  // C(D0) -> C(D1){1}
  SparseMap saddle_10;  // C(D1) -> C(D0){1}
  SparseMap i01;        // C(D0) -> C(D1)
  SparseMap i10;        // C(D1) -> C(D0)
  SparseMap c_plus;     // C(T-) -> C(T+)
  SparseMap c_minus;    // C(T+) -> C(T-){0,2}
};

LocalMaps local_maps(const PieceVars& x);

}  // namespace tinv

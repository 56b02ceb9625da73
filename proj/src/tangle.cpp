#include "tinv/tangle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace tinv {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Renumbers arbitrary integer labels to 0..E-1 in increasing order.
Diagram from_labeled(const std::vector<std::array<int, 4>>& xs, int free_loops) {
  std::map<int, int> count;
  for (const auto& x : xs)
    for (int l : x) ++count[l];
  std::map<int, int> index;
  std::vector<int> labels;
  for (auto [l, n] : count) {
    if (n != 2)
      throw ParseError("edge label " + std::to_string(l) + " appears " + std::to_string(n) + " times (expected 2)");
    index[l] = static_cast<int>(labels.size());
    labels.push_back(l);
  }
  std::vector<std::array<int, 4>> ys;
  for (const auto& x : xs) ys.push_back({index[x[0]], index[x[1]], index[x[2]], index[x[3]]});
  Diagram d = make_diagram(std::move(ys), free_loops);
  d.labels = labels;
  return d;
}

}  // namespace

int Diagram::n_plus() const { return static_cast<int>(std::count(signs.begin(), signs.end(), 1)); }
int Diagram::n_minus() const { return static_cast<int>(std::count(signs.begin(), signs.end(), -1)); }

std::string Diagram::to_pd() const {
  std::ostringstream os;
  os << "PD[";
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    if (c) os << ",";
    const auto& x = crossings[c];
    os << "X(" << x[0] + 1 << "," << x[1] + 1 << "," << x[2] + 1 << "," << x[3] + 1 << ")";
  }
  os << "]";
  return os.str();
}

namespace {

std::array<int, 4> switched(const std::array<int, 4>& x, int sign) {
  // The old over-strand becomes the under-strand; start from its incoming edge.
  if (sign > 0) return {x[3], x[0], x[1], x[2]};
  return {x[1], x[2], x[3], x[0]};
}

}  // namespace

Diagram Diagram::mirror() const {
  if (crossings.empty()) return *this;
  std::vector<std::array<int, 4>> xs;
  for (std::size_t c = 0; c < crossings.size(); ++c) xs.push_back(switched(crossings[c], signs[c]));
  Diagram d = make_diagram(std::move(xs), free_loops);
  d.labels = labels;
  return d;
}

Diagram Diagram::crossing_change(int c) const {
  auto xs = crossings;
  xs.at(c) = switched(xs[c], signs[c]);
  Diagram d = make_diagram(std::move(xs), free_loops);
  d.labels = labels;
  return d;
}

Diagram make_diagram(std::vector<std::array<int, 4>> crossings, int free_loops) {
  Diagram d;
  d.crossings = std::move(crossings);
  d.free_loops = free_loops;
  int ne = 0;
  for (const auto& x : d.crossings)
    for (int e : x) ne = std::max(ne, e + 1);
  d.num_edges = ne + free_loops;
  std::vector<std::vector<EdgeEnd>> ends(static_cast<std::size_t>(ne));
  for (int c = 0; c < d.num_crossings(); ++c)
    for (int s = 0; s < 4; ++s) {
      int e = d.crossings[c][s];
      if (e < 0) throw ParseError("negative edge index");
      ends[e].push_back({c, s});
    }
  for (int e = 0; e < ne; ++e)
    if (ends[e].size() != 2) throw ParseError("edge " + std::to_string(e) + " does not have two ends");

  d.tail.assign(static_cast<std::size_t>(d.num_edges), EdgeEnd{});
  d.head.assign(static_cast<std::size_t>(d.num_edges), EdgeEnd{});
  d.component.assign(static_cast<std::size_t>(d.num_edges), -1);
  auto other_end = [&](int e, EdgeEnd at) {
    const auto& en = ends[e];
    if (en[0].crossing == at.crossing && en[0].slot == at.slot) return en[1];
    return en[0];
  };
  // Walks a component starting with edge e entering at `in`.
  auto walk = [&](int e, EdgeEnd in) {
    int comp = d.num_components++;
    for (;;) {
      if (d.component[e] >= 0) {
        if (d.head[e].crossing != in.crossing || d.head[e].slot != in.slot)
          throw ParseError("inconsistent orientation on edge " + std::to_string(e));
        return;
      }
      if (in.slot == 2) throw ParseError("under-strand leaves through its incoming slot");
      d.component[e] = comp;
      d.head[e] = in;
      d.tail[e] = other_end(e, in);
      if (d.tail[e].slot == 0) throw ParseError("under-strand enters through its outgoing slot");
      EdgeEnd out{in.crossing, (in.slot + 2) % 4};
      int next = d.crossings[out.crossing][out.slot];
      in = other_end(next, out);
      e = next;
      // The edge we continue along must leave through `out`.
      if (d.component[e] >= 0 && (d.tail[e].crossing != out.crossing || d.tail[e].slot != out.slot))
        throw ParseError("inconsistent orientation on edge " + std::to_string(e));
    }
  };
  for (int c = 0; c < d.num_crossings(); ++c) {
    int e = d.crossings[c][0];
    if (d.component[e] < 0) walk(e, EdgeEnd{c, 0});
  }
  for (int e = 0; e < ne; ++e)
    if (d.component[e] < 0) walk(e, ends[e][1]);
  for (int k = 0; k < free_loops; ++k) d.component[ne + k] = d.num_components++;

  d.signs.resize(d.crossings.size());
  for (int c = 0; c < d.num_crossings(); ++c) {
    int e = d.crossings[c][3];
    d.signs[c] = (d.head[e].crossing == c && d.head[e].slot == 3) ? 1 : -1;
  }
  d.labels.resize(static_cast<std::size_t>(d.num_edges));
  std::iota(d.labels.begin(), d.labels.end(), 1);
  return d;
}

Diagram parse_pd(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 4 || s.compare(0, 3, "PD[") != 0 || s.back() != ']')
    throw ParseError("PD code must have the form PD[X(a,b,c,d),...]");
  std::string body = s.substr(3, s.size() - 4);
  std::vector<std::array<int, 4>> xs;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != 'X' || i + 1 >= body.size() || (body[i + 1] != '(' && body[i + 1] != '['))
      throw ParseError("expected X( at position " + std::to_string(i + 3));
    char close = body[i + 1] == '(' ? ')' : ']';
    std::size_t j = body.find(close, i + 2);
    if (j == std::string::npos) throw ParseError("unterminated crossing");
    std::vector<int> vals;
    std::stringstream ss(body.substr(i + 2, j - i - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw ParseError("bad edge label '" + tok + "'");
      vals.push_back(std::stoi(tok));
    }
    if (vals.size() != 4) throw ParseError("crossing with " + std::to_string(vals.size()) + " entries (expected 4)");
    xs.push_back({vals[0], vals[1], vals[2], vals[3]});
    i = j + 1;
    if (i < body.size()) {
      if (body[i] != ',') throw ParseError("expected ',' between crossings");
      ++i;
      if (i == body.size()) throw ParseError("trailing ','");
    }
  }
  if (xs.empty()) return unlink(1);
  Diagram d = from_labeled(xs, 0);
  try {
    compute_regions(d);
  } catch (const UnsupportedDiagram&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("not a planar diagram: ") + e.what());
  }
  return d;
}

Diagram braid_closure(const std::vector<int>& word, int strands) {
  if (strands < 1) throw ParseError("braid needs at least one strand");
  std::vector<int> pos(static_cast<std::size_t>(strands));
  std::iota(pos.begin(), pos.end(), 0);
  int next = strands;
  std::vector<std::array<int, 4>> xs;
  for (int g : word) {
    int i = std::abs(g);
    if (g == 0 || i >= strands) throw ParseError("braid generator " + std::to_string(g) + " out of range");
    int l = i - 1, r = i;
    int in_l = pos[l], in_r = pos[r];
    int out_l = next++, out_r = next++;
    if (g > 0) xs.push_back({in_r, out_r, out_l, in_l});
    else xs.push_back({in_l, in_r, out_r, out_l});
    pos[l] = out_l;
    pos[r] = out_r;
  }
  // Close up: the top edge at position k is the bottom edge k.
  std::map<int, int> closing;
  int free_loops = 0;
  for (int k = 0; k < strands; ++k) {
    if (pos[k] == k) ++free_loops;
    else closing[pos[k]] = k;
  }
  for (auto& x : xs)
    for (int& e : x)
      if (auto it = closing.find(e); it != closing.end()) e = it->second;
  if (xs.empty()) return unlink(free_loops);
  Diagram d = from_labeled(xs, free_loops);
  return d;
}

Diagram parse_braid(const std::string& word, int strands) {
  std::vector<int> gens;
  std::string w = word;
  for (char& ch : w)
    if (ch == ',') ch = ' ';
  std::stringstream ss(w);
  std::string tok;
  int top = 0;
  while (ss >> tok) {
    std::size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad braid generator '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("bad braid generator '" + tok + "'");
    gens.push_back(g);
    top = std::max(top, std::abs(g));
  }
  if (strands <= 0) strands = top + 1;
  return braid_closure(gens, strands);
}

Diagram parse_input(const std::string& format, const std::string& payload, int strands) {
  if (format == "pd") return parse_pd(payload);
  if (format == "braid") return parse_braid(payload, strands);
  throw ParseError("unknown diagram format '" + format + "'");
}

std::vector<TableLine> read_table(std::istream& in) {
  std::vector<TableLine> out;
  std::string text;
  for (int line = 1; std::getline(in, text); ++line) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty() || text[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = text.find('\t', start);
      fields.push_back(text.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 3 || fields[0].empty())
      throw ParseError("line " + std::to_string(line) + ": expected name<TAB>format<TAB>payload");
    TableLine row{line, fields[0], fields[1], fields[2], {fields.begin() + 3, fields.end()}};
    out.push_back(std::move(row));
  }
  return out;
}

Diagram unlink(int n) {
  if (n < 1) throw ParseError("unlink needs at least one component");
  return make_diagram({}, n);
}

// ---------------------------------------------------------------- regions

std::array<int, 4> DecoratedDiagram::crossing_regions(int c) const {
  const auto& k = corner.at(c);
  return {k[1], k[2], k[3], k[0]};
}

DecoratedDiagram compute_regions(const Diagram& d) {
  DecoratedDiagram dd;
  dd.diagram = d;
  int n = d.num_crossings();
  dd.edge_left.assign(static_cast<std::size_t>(d.num_edges), -1);
  dd.edge_right.assign(static_cast<std::size_t>(d.num_edges), -1);
  if (n == 0) {
    // Disjoint circles: region 0 outside, region k+1 inside circle k.
    dd.num_regions = d.free_loops + 1;
    for (int k = 0; k < d.free_loops; ++k) {
      dd.edge_left[k] = k + 1;
      dd.edge_right[k] = 0;
    }
  } else {
    // Connectivity of the crossing graph.
    UnionFind cc(n);
    for (int e = 0; e < d.num_edges; ++e)
      if (d.head[e].crossing >= 0) cc.unite(d.head[e].crossing, d.tail[e].crossing);
    for (int c = 0; c < n; ++c)
      if (cc.find(c) != cc.find(0) || d.free_loops > 0)
        throw UnsupportedDiagram("split diagrams are not supported");
    // Corner (c, i) lies between slots i and i+1. Walking out along the edge
    // at slot i keeps (c, i) on the left; on arrival at (Y, j) the left side
    // is corner (Y, j-1).
    std::vector<std::vector<EdgeEnd>> ends(static_cast<std::size_t>(d.num_edges));
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < 4; ++s) ends[d.crossings[c][s]].push_back({c, s});
    UnionFind uf(4 * n);
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < 4; ++i) {
        int e = d.crossings[c][i];
        EdgeEnd o = (ends[e][0].crossing == c && ends[e][0].slot == i) ? ends[e][1] : ends[e][0];
        uf.unite(4 * c + i, 4 * o.crossing + (o.slot + 3) % 4);
      }
    std::map<int, int> ids;
    dd.corner.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < 4; ++i) {
        int root = uf.find(4 * c + i);
        auto [it, ins] = ids.try_emplace(root, static_cast<int>(ids.size()));
        dd.corner[c][i] = it->second;
      }
    dd.num_regions = static_cast<int>(ids.size());
    if (n - d.num_edges + dd.num_regions != 2)
      throw ParseError("Euler characteristic check failed (V - E + F = " +
                       std::to_string(n - d.num_edges + dd.num_regions) + ")");
    for (int e = 0; e < d.num_edges; ++e) {
      EdgeEnd h = d.head[e];
      dd.edge_left[e] = dd.corner[h.crossing][(h.slot + 3) % 4];
      dd.edge_right[e] = dd.corner[h.crossing][h.slot];
    }
  }
  dd.basepoints.assign(static_cast<std::size_t>(d.num_components), -1);
  for (int e = d.num_edges - 1; e >= 0; --e) dd.basepoints[d.component[e]] = e;
  return dd;
}

DecoratedDiagram place_arcs(DecoratedDiagram dd) {
  if (dd.diagram.num_crossings() == 0)
    for (int k = 0; k + 1 < dd.diagram.free_loops; ++k) dd.arcs.push_back({0, k, k + 1});
  return dd;
}

// ---------------------------------------------------------------- local pieces

PieceVars symbolic_vars() { return {Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3)}; }

Poly piece_potential(const PieceVars& x) { return (x[0] - x[2]) * (x[1] - x[3]) * (x[1] - x[2] + x[3] - x[0]); }

namespace {

MultiFact crossing_piece(const PieceVars& y, int filtration) {
  Poly l = y[1] - y[2] + y[3] - y[0];
  MultiFact c({{2, filtration}, {1, filtration}, {0, filtration + 1}, {-1, filtration + 1}}, piece_potential(y));
  c.add_entry(1, 0, -(y[0] - y[2]));
  c.add_entry(0, 1, -((y[1] - y[3]) * l));
  c.add_entry(3, 2, -(y[1] - y[3]));
  c.add_entry(2, 3, -((y[0] - y[2]) * l));
  c.add_entry(3, 0, Poly(-1));
  c.add_entry(2, 1, l);
  return c;
}

}  // namespace

MultiFact elementary(PieceKind kind, const PieceVars& x) {
  Poly l = x[1] - x[2] + x[3] - x[0];
  switch (kind) {
    case PieceKind::D0:
      return koszul({x[0] - x[2]}, {(x[1] - x[3]) * l});
    case PieceKind::D1:
      return koszul({x[1] - x[3]}, {(x[0] - x[2]) * l});
    case PieceKind::Positive:
      return crossing_piece(x, 0);
    case PieceKind::Negative:
      return crossing_piece({x[1], x[2], x[3], x[0]}, -1);
    case PieceKind::Arc: {
      PieceVars y = x;
      y[2] = y[0];
      Poly la = y[1] - y[2] + y[3] - y[0];
      return koszul({Poly()}, {(y[1] - y[3]) * la});
    }
  }
  throw std::invalid_argument("unknown piece kind");
}

LocalMaps local_maps(const PieceVars& x) {
  Poly l = x[1] - x[2] + x[3] - x[0];
  Poly m = x[0] - x[1] - x[2] + x[3];
  LocalMaps maps;
  maps.saddle_01 = SparseMap(2, 2);
  maps.saddle_01.add(1, 0, Poly(-1));
  maps.saddle_01.add(0, 1, l);
  maps.saddle_10 = maps.saddle_01;
  maps.i01 = SparseMap::identity(2);
  maps.i10 = SparseMap::identity(2);
  // Generators of C(T-) and C(T+): (e, f) of the lower-filtration summand,
  // then (e, f) of the upper one.
  maps.c_plus = SparseMap(4, 4);
  maps.c_plus.add(0, 0, Poly(1));
  maps.c_plus.add(1, 1, Poly(1));
  maps.c_plus.add(0, 2, -m);
  maps.c_plus.add(1, 3, m);
  maps.c_plus.add(2, 2, Poly(-1));
  maps.c_plus.add(3, 3, Poly(1));
  maps.c_minus = SparseMap(4, 4);
  maps.c_minus.add(0, 0, Poly(1));
  maps.c_minus.add(1, 1, Poly(1));
  maps.c_minus.add(0, 2, -m);
  maps.c_minus.add(1, 3, -m);
  maps.c_minus.add(2, 2, Poly(-1));
  maps.c_minus.add(3, 3, Poly(1));
  return maps;
}

}  // namespace tinv

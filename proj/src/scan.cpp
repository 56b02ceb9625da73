#include "tinv/scan.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include <unistd.h>

namespace tinv {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Region variables: region r is variable r unless gauged.
struct Gauge {
  std::vector<bool> gauged;
  int x_var = -1;
  int var(int r) const { return gauged[r] ? -1 : r; }
  Poly y(int r) const { return gauged[r] ? Poly() : Poly::var(r); }
};

Gauge make_gauge(const DecoratedDiagram& dd, bool reduced) {
  if (dd.num_regions > kMaxVars)
    throw UnsupportedDiagram("diagram has " + std::to_string(dd.num_regions) + " regions; at most " +
                             std::to_string(kMaxVars) + " are supported");
  Gauge g;
  g.gauged.assign(static_cast<std::size_t>(dd.num_regions), false);
  int bp = dd.basepoint();
  g.gauged[dd.edge_right[bp]] = true;
  if (reduced)
    g.gauged[dd.edge_left[bp]] = true;
  else
    g.x_var = dd.edge_left[bp];
  return g;
}

// Koszul state of one cube vertex before reduction, with the region pairs
// each row merges (-1 for none) and the circles of the resolution.
struct VertexData {
  KoszulState state;
  std::vector<std::pair<int, int>> merges;  // per row
  std::vector<std::pair<int, int>> circle_sides;  // (left, right) region per circle
  int bp_circle = 0;
};

VertexData vertex_data(const DecoratedDiagram& dd, const Gauge& g, std::uint32_t v) {
  const Diagram& d = dd.diagram;
  int n = d.num_crossings();
  VertexData out;
  Dsu arcs(d.num_edges);
  if (n == 0) {
    for (std::size_t k = 0; k < dd.arcs.size(); ++k) {
      const auto& a = dd.arcs[k];
      auto other = [&](int e) { return dd.edge_left[e] == a.region ? dd.edge_right[e] : dd.edge_left[e]; };
      Poly u = g.y(other(a.edge_a)) - g.y(a.region), w = g.y(other(a.edge_b)) - g.y(a.region);
      out.state.rows.push_back({Poly(), u * u - w * w, static_cast<int>(k), -1});
      out.state.base_degree += 1;
      out.merges.emplace_back(-1, -1);
    }
  } else {
    for (int c = 0; c < n; ++c) {
      auto y = dd.crossing_regions(c);
      Poly l = g.y(y[1]) - g.y(y[2]) + g.y(y[3]) - g.y(y[0]);
      const auto& x = d.crossings[c];
      if (((v >> c) & 1u) == 0) {
        out.state.rows.push_back({g.y(y[2]) - g.y(y[0]), (g.y(y[3]) - g.y(y[1])) * l, c, -1});
        out.state.base_degree += 2;
        out.merges.emplace_back(y[0], y[2]);
        arcs.unite(x[0], x[1]);
        arcs.unite(x[2], x[3]);
      } else {
        out.state.rows.push_back({g.y(y[3]) - g.y(y[1]), (g.y(y[2]) - g.y(y[0])) * l, c, -1});
        out.merges.emplace_back(y[1], y[3]);
        arcs.unite(x[1], x[2]);
        arcs.unite(x[3], x[0]);
      }
    }
  }
  std::map<int, int> circle_of_root;
  for (int e = 0; e < d.num_edges; ++e) {
    auto [it, ins] = circle_of_root.try_emplace(arcs.find(e), static_cast<int>(circle_of_root.size()));
    if (ins) out.circle_sides.emplace_back(dd.edge_left[e], dd.edge_right[e]);
  }
  out.bp_circle = circle_of_root.at(arcs.find(dd.basepoint()));
  return out;
}

}  // namespace

VertexReduction reduce_vertex(const DecoratedDiagram& dd, std::uint32_t vertex, bool reduced) {
  Gauge g = make_gauge(dd, reduced);
  VertexData vd = vertex_data(dd, g, vertex);
  int nr = dd.num_regions;

  // Merge classes of regions and their representatives.
  Dsu cls(nr);
  for (auto [a, b] : vd.merges)
    if (a >= 0) cls.unite(a, b);
  std::vector<int> rep(static_cast<std::size_t>(nr), -2);  // per class root
  for (int r = 0; r < nr; ++r) {
    int& cur = rep[cls.find(r)];
    if (g.gauged[r]) {
      if (cur == -1) throw ArithmeticError("two gauged regions merged at a cube vertex");
      cur = -1;
    }
  }
  for (int r = 0; r < nr; ++r) {
    int& cur = rep[cls.find(r)];
    if (cur == -1 || cur == g.x_var) continue;
    if (r == g.x_var || cur == -2) cur = r;
  }
  auto class_rep_region = [&](int r) {
    int k = cls.find(r);
    if (rep[k] >= 0) return rep[k];
    for (int s = 0; s < nr; ++s)
      if (cls.find(s) == k && g.gauged[s]) return s;
    return -1;
  };

  // Spanning forest of each class rooted at its representative region.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nr));  // (neighbour, row id)
  for (std::size_t k = 0; k < vd.merges.size(); ++k) {
    auto [a, b] = vd.merges[k];
    if (a < 0 || a == b) continue;
    adj[a].emplace_back(b, vd.state.rows[k].id);
    adj[b].emplace_back(a, vd.state.rows[k].id);
  }
  std::vector<int> parent(static_cast<std::size_t>(nr), -1), parent_row(static_cast<std::size_t>(nr), -1);
  std::vector<bool> seen(static_cast<std::size_t>(nr), false);
  std::vector<int> order;
  for (int r = 0; r < nr; ++r) {
    int root = class_rep_region(r);
    if (seen[root]) continue;
    std::deque<int> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto [w, row] : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = u;
          parent_row[w] = row;
          queue.push_back(w);
        }
    }
  }

  VertexReduction out;
  out.red = Reduction(vd.state);
  out.red.compact();
  out.x_var = g.x_var;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) out.red.eliminate_variable(parent_row[*it], g.var(*it), g.var(parent[*it]));

  // Tree of classes joined by circles, rooted at the gauged class.
  int root = cls.find(dd.edge_right[dd.basepoint()]);
  int nc = static_cast<int>(vd.circle_sides.size());
  out.num_circles = nc;
  std::vector<std::vector<std::pair<int, int>>> tree(static_cast<std::size_t>(nr));  // (class, circle)
  for (int c = 0; c < nc; ++c) {
    int a = cls.find(vd.circle_sides[c].first), b = cls.find(vd.circle_sides[c].second);
    if (a == b) throw ArithmeticError("circle with the same class on both sides");
    tree[a].emplace_back(b, c);
    tree[b].emplace_back(a, c);
  }
  auto class_var = [&](int k) { return rep[k] >= 0 ? rep[k] : -1; };
  // Iterative post-order.
  std::vector<std::tuple<int, int, int, std::size_t>> stack{{root, -1, -1, 0}};  // class, parent, circle, next
  while (!stack.empty()) {
    auto [k, par, circ, next] = stack.back();
    if (next < tree[k].size()) {
      ++std::get<3>(stack.back());
      auto [w, c] = tree[k][next];
      if (w != par) stack.emplace_back(w, k, c, 0);
      continue;
    }
    if (par >= 0 && circ != vd.bp_circle) out.red.deloop(class_var(k), class_var(par));
    stack.pop_back();
  }
  if (!out.red.current().rows.empty()) throw ArithmeticError("vertex reduction left Koszul rows");
  if (out.red.current().copy_bits != nc - 1) throw ArithmeticError("vertex reduction has wrong rank");
  return out;
}

std::size_t default_cap() {
  if (const char* s = std::getenv("TINV_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t(1) << 20;
}

std::size_t default_memory_budget() {
  static const std::size_t budget = [] {
    if (const char* s = std::getenv("TINV_MEM_MB")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && v > 0) return static_cast<std::size_t>(v) << 20;
    }
    std::ifstream in("/proc/meminfo");
    std::string key;
    std::size_t kb = 0;
    while (in >> key >> kb) {
      if (key == "MemAvailable:") return kb / 4 * 3 * 1024;
      in.ignore(256, '\n');
    }
    return std::size_t(0);
  }();
  return budget;
}

namespace {

// Resident set size in bytes, 0 where /proc is unavailable.
std::size_t resident_bytes() {
  std::ifstream in("/proc/self/statm");
  std::size_t pages = 0, resident = 0;
  if (!(in >> pages >> resident)) return 0;
  return resident * static_cast<std::size_t>(sysconf(_SC_PAGESIZE));
}

void check_memory(std::size_t budget) {
  if (budget && resident_bytes() > budget)
    throw ResourceCapExceeded("scan exceeds the memory budget of " + std::to_string(budget >> 20) + " MB");
}

}  // namespace

std::vector<int> ReducedComplex::shifts() const {
  std::set<int> s;
  for (int j = 0; j < d.cols(); ++j)
    for (const auto& e : d.column(j)) s.insert(gens[e.row].filtration - gens[j].filtration);
  return {s.begin(), s.end()};
}

bool ReducedComplex::squares_to_zero() const { return (d * d).is_zero(); }

std::vector<int> choose_order(const DecoratedDiagram& dd) {
  // Greedy frontier: start at crossing 0, then repeatedly take the crossing
  // sharing the most edges with those already chosen.
  const Diagram& d = dd.diagram;
  int n = d.num_crossings();
  std::vector<int> order;
  std::vector<bool> used(static_cast<std::size_t>(n), false), edge_seen(static_cast<std::size_t>(d.num_edges), false);
  for (int step = 0; step < n; ++step) {
    int best = -1, best_score = -1;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      int score = 0;
      for (int e : d.crossings[c]) score += edge_seen[e] ? 1 : 0;
      if (score > best_score) {
        best = c;
        best_score = score;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (int e : d.crossings[best]) edge_seen[e] = true;
  }
  return order;
}

namespace {

// Saddle at crossing c from the vertex with bit c clear to the one with it
// set: -theta_c + L_c iota_c on the unreduced Koszul states.
KVec apply_saddle(int c, const Poly& l, const KVec& x) {
  KVec out;
  for (const auto& [key, p] : x.terms) {
    std::uint32_t m = kmask(key), nm = 0;
    if (((m >> c) & 1u) == 0) {
      int s = wedge(c, m, nm);
      out.add(kkey(kcopy(key), nm), p.scaled(-s));
    } else if (!l.is_zero()) {
      int s = contract(c, m, nm);
      out.add(kkey(kcopy(key), nm), (l * p).scaled(s));
    }
  }
  return out;
}

}  // namespace

int cancel_units(ReducedComplex& cx, int shift) {
  int n = cx.rank();
  std::vector<std::map<int, Poly>> col(static_cast<std::size_t>(n));
  std::vector<std::set<int>> row(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (const auto& e : cx.d.column(j)) {
      col[j][e.row] = e.value;
      row[e.row].insert(j);
    }
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  auto shift_of = [&](int t, int s) { return cx.gens[t].filtration - cx.gens[s].filtration; };
  int cancelled = 0;
  for (int a = 0; a < n; ++a) {
    while (alive[a]) {
      int b = -1;
      for (const auto& [r, v] : col[a])
        if (shift_of(r, a) == shift && v.is_unit()) {
          b = r;
          break;
        }
      if (b < 0) break;
      std::int64_t uinv = col[a][b].constant_term();
      std::vector<std::pair<int, Poly>> src_col(col[a].begin(), col[a].end());
      std::vector<int> cols_b(row[b].begin(), row[b].end());
      for (int c : cols_b) {
        if (c == a) continue;
        Poly dbc = col[c].at(b);
        for (const auto& [r, dra] : src_col) {
          if (r == b) continue;
          Poly delta = (dra * dbc).scaled(-uinv);
          auto it = col[c].find(r);
          if (it == col[c].end()) {
            col[c].emplace(r, delta);
            row[r].insert(c);
          } else {
            it->second += delta;
            if (it->second.is_zero()) {
              col[c].erase(it);
              row[r].erase(c);
            }
          }
        }
      }
      // Remove generators a and b.
      for (int k : {a, b}) {
        for (const auto& [r, v] : col[k]) row[r].erase(k);
        col[k].clear();
        for (int c : row[k]) col[c].erase(k);
        row[k].clear();
        alive[k] = false;
      }
      ++cancelled;
    }
  }
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<Bidegree> gens;
  for (int k = 0; k < n; ++k)
    if (alive[k]) {
      index[k] = static_cast<int>(gens.size());
      gens.push_back(cx.gens[k]);
    }
  SparseMap d(static_cast<int>(gens.size()), static_cast<int>(gens.size()));
  for (int j = 0; j < n; ++j)
    if (alive[j])
      for (const auto& [r, v] : col[j]) d.add(index[r], index[j], v);
  cx.gens = std::move(gens);
  cx.d = std::move(d);
  return cancelled;
}

ReducedComplex scan(const DecoratedDiagram& dd, const ScanOptions& opt, ScanStats* stats) {
  const Diagram& dg = dd.diagram;
  int n = dg.num_crossings();
  if (n > 24) throw UnsupportedDiagram("too many crossings for the cube assembly");
  Gauge g = make_gauge(dd, opt.reduced);
  std::uint32_t nv = std::uint32_t(1) << n;

  std::size_t budget = opt.memory_budget ? opt.memory_budget : default_memory_budget();
  std::vector<VertexReduction> vr(nv);
  std::vector<std::size_t> offset(nv + 1, 0);
  for (std::uint32_t v = 0; v < nv; ++v) {
    vr[v] = reduce_vertex(dd, v, opt.reduced);
    offset[v + 1] = offset[v] + (std::size_t(1) << vr[v].red.current().copy_bits);
    if (offset[v + 1] > opt.cap)
      throw ResourceCapExceeded("complex exceeds the generator cap of " + std::to_string(opt.cap));
    if (v % 16 == 15) check_memory(budget);
  }
  std::size_t total = offset[nv];

  ReducedComplex out;
  out.reduced = opt.reduced;
  out.x_var = g.x_var;
  out.n_crossings = n;
  int nminus = dg.n_minus();
  out.gens.resize(total);
  for (std::uint32_t v = 0; v < nv; ++v) {
    const auto& st = vr[v].red.current();
    for (std::size_t k = 0; k < offset[v + 1] - offset[v]; ++k)
      out.gens[offset[v] + k] = {st.degree(kkey(static_cast<std::uint32_t>(k), 0)),
                                 std::popcount(v) - nminus};
  }

  std::vector<Poly> lc(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    auto y = dd.crossing_regions(c);
    lc[c] = g.y(y[1]) - g.y(y[2]) + g.y(y[3]) - g.y(y[0]);
  }

  out.d = SparseMap(static_cast<int>(total), static_cast<int>(total));
  for (std::uint32_t v = 0; v < nv; ++v)
    for (std::size_t k = 0; k < offset[v + 1] - offset[v]; ++k) {
      int src = static_cast<int>(offset[v] + k);
      KVec unit;
      unit.add(kkey(static_cast<std::uint32_t>(k), 0), Poly(1));
      std::map<std::uint32_t, KVec> x{{v, vr[v].red.include(unit)}};
      while (!x.empty()) {
        std::map<std::uint32_t, KVec> y;
        for (const auto& [u, xv] : x)
          for (int c = 0; c < n; ++c)
            if (((u >> c) & 1u) == 0) y[u | (1u << c)].add(apply_saddle(c, lc[c], xv));
        x.clear();
        check_memory(budget);
        for (auto& [w, yv] : y) {
          if (yv.is_zero()) continue;
          KVec p = vr[w].red.project(yv);
          KVec h;
          h.add(vr[w].red.homotopy(yv), -1);
          for (const auto& [key, val] : p.terms) {
            if (kmask(key) != 0) throw ArithmeticError("projection left Koszul slots");
            for (int r = 0; r < kMaxVars; ++r)
              if (r != g.x_var && val.uses_var(r)) throw ArithmeticError("projection left a region variable");
            out.d.add(static_cast<int>(offset[w] + kcopy(key)), src, val);
          }
          if (!h.is_zero()) {
            x.emplace(w, std::move(h));
          }
        }
      }
    }

  if (stats) {
    stats->cube_generators = std::size_t(nv) << n;
    stats->vertex_generators = total;
  }
  if (opt.cancel) cancel_units(out, 1);
  if (stats) stats->final_generators = out.gens.size();
  return out;
}

}  // namespace tinv

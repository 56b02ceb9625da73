#include "tinv/checks.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace tinv {

void CheckResult::expect(bool cond, const std::string& what) {
  ++cases;
  if (!cond) {
    ok = false;
    failures.push_back(what);
  }
}

// ---------------------------------------------------------------- retracts

namespace {

std::vector<KVec> probes(const KoszulState& s, int nvars, unsigned seed, const std::vector<int>& dead) {
  std::mt19937 rng(seed);
  auto pick = [&] {
    for (;;) {
      int v = static_cast<int>(rng() % nvars);
      if (std::find(dead.begin(), dead.end(), v) == dead.end()) return v;
    }
  };
  std::vector<KVec> out;
  std::uint32_t masks = 1u << s.rows.size();
  std::uint32_t copies = 1u << s.copy_bits;
  for (std::uint32_t c = 0; c < copies; ++c)
    for (std::uint32_t m = 0; m < masks; ++m) {
      KVec v;
      v.add(kkey(c, m), Poly(1));
      out.push_back(v);
      if (nvars > 0) {
        KVec w;
        Poly p = Poly::var(pick());
        p *= Poly::var(pick());
        p += Poly::var(pick()).scaled(3);
        w.add(kkey(c, m), p);
        out.push_back(w);
      }
    }
  return out;
}

std::vector<int> eliminated(const Move& m) {
  if (auto* l = std::get_if<move::Linex>(&m)) return {l->p};
  if (auto* q = std::get_if<move::Sqex>(&m)) return {q->y};
  return {};
}

}  // namespace

std::string check_move(const KoszulState& s, const KoszulState& t, const Move& m, int nvars, std::vector<int> dead) {
  for (const auto& v : probes(s, nvars, 7, dead)) {
    KVec ip = move_include(m, move_project(m, v));
    KVec lhs = v;
    lhs.add(ip, -1);
    KVec rhs = move_homotopy(m, s.apply_d(v));
    rhs.add(s.apply_d(move_homotopy(m, v)));
    if (!(lhs == rhs)) return "1 - IP != Hd + dH on " + v.to_string();
    if (!move_project(m, move_homotopy(m, v)).is_zero()) return "PH != 0 on " + v.to_string();
    if (!move_homotopy(m, move_homotopy(m, v)).is_zero()) return "HH != 0 on " + v.to_string();
    if (!(move_project(m, s.apply_d(v)) == t.apply_d(move_project(m, v)))) return "P not a chain map on " + v.to_string();
  }
  for (int d : eliminated(m)) dead.push_back(d);
  for (const auto& u : probes(t, nvars, 11, dead)) {
    if (!(move_project(m, move_include(m, u)) == u)) return "PI != 1 on " + u.to_string();
    if (!move_homotopy(m, move_include(m, u)).is_zero()) return "HI != 0 on " + u.to_string();
    if (!(s.apply_d(move_include(m, u)) == move_include(m, t.apply_d(u)))) return "I not a chain map on " + u.to_string();
  }
  return {};
}

std::string check_reduction(const Reduction& r, int nvars) {
  std::vector<int> dead;
  for (std::size_t k = 0; k < r.moves().size(); ++k) {
    std::string e = check_move(r.state(k), r.state(k + 1), r.moves()[k], nvars, dead);
    if (!e.empty()) return "move " + std::to_string(k) + " (kind " + std::to_string(r.moves()[k].index()) + "): " + e;
    for (int d : eliminated(r.moves()[k])) dead.push_back(d);
  }
  const auto& s = r.start();
  const auto& t = r.current();
  for (const auto& v : probes(s, nvars, 5, {})) {
    KVec lhs = v;
    lhs.add(r.include(r.project(v)), -1);
    KVec rhs = r.homotopy(s.apply_d(v));
    rhs.add(s.apply_d(r.homotopy(v)));
    if (!(lhs == rhs)) return "composite: 1 - IP != Hd + dH on " + v.to_string();
    if (!r.homotopy(r.homotopy(v)).is_zero()) return "composite: HH != 0";
  }
  for (const auto& u : probes(t, nvars, 3, dead))
    if (!(r.project(r.include(u)) == u)) return "composite: PI != 1";
  return {};
}

MultiFact random_filtered_complex(std::mt19937& rng, int pairs, int free_gens) {
  std::vector<Bidegree> gens;
  std::vector<std::pair<int, int>> arrows;
  for (int p = 0; p < pairs; ++p) {
    int f = static_cast<int>(rng() % 3);
    int s = static_cast<int>(rng() % 2);
    int l = static_cast<int>(rng() % 2);
    arrows.push_back({static_cast<int>(gens.size()), static_cast<int>(gens.size()) + 1});
    gens.push_back({-3 * l, f});
    gens.push_back({-3 * l - 3, f + s});
  }
  for (int k = 0; k < free_gens; ++k) gens.push_back({-3 * static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)});
  int n = static_cast<int>(gens.size());
  SparseMap d0(n, n);
  for (auto [src, tgt] : arrows) d0.add(tgt, src, Poly((rng() % 2) ? 1 : -1));
  // N strictly raises filtration, so 1 + N is invertible with a finite series.
  SparseMap nmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (gens[i].filtration > gens[j].filtration && gens[i].internal == gens[j].internal && rng() % 2 == 0)
        nmat.add(i, j, Poly(static_cast<int>(rng() % 5) - 2));
  SparseMap phi = SparseMap::identity(n) + nmat;
  SparseMap phinv = SparseMap::identity(n), term = SparseMap::identity(n);
  for (int k = 1; k <= 4; ++k) {
    term = term * nmat.scaled(-1);
    phinv = phinv + term;
  }
  MultiFact c(gens, Poly());
  c.differential() = phi * d0 * phinv;
  return c;
}

// ---------------------------------------------------------------- data

std::vector<KnotRecord> load_knots(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<KnotRecord> out;
  for (auto& row : read_table(in)) {
    auto where = path + " line " + std::to_string(row.line) + ": ";
    if (row.extra.size() < 3) throw ParseError(where + "expected crossings, alternating flag and sigma");
    KnotRecord k;
    k.name = row.name;
    k.format = row.format;
    k.payload = row.payload;
    try {
      k.diagram = parse_input(row.format, row.payload);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    try {
      std::size_t used = 0;
      k.crossings = std::stoi(row.extra[0], &used);
      if (used != row.extra[0].size()) throw ParseError("");
      k.sigma = std::stoi(row.extra[2], &used);
      if (used != row.extra[2].size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError(where + "bad crossing number or sigma");
    }
    if (row.extra[1] != "Y" && row.extra[1] != "N") throw ParseError(where + "alternating flag must be Y or N");
    k.alternating = row.extra[1] == "Y";
    out.push_back(std::move(k));
  }
  return out;
}

std::string data_dir() {
  if (const char* env = std::getenv("TINV_DATA")) return env;
#ifdef TINV_DATA_DIR
  return TINV_DATA_DIR;
#else
  return "data";
#endif
}

const ReducedComplex& ComplexCache::get(const Diagram& d, bool reduced, bool cancel) {
  std::string key = d.to_pd() + "+" + std::to_string(d.free_loops) + (reduced ? "/r" : "/u") + (cancel ? "c" : "");
  auto it = store_.find(key);
  if (it != store_.end()) return it->second;
  ScanOptions opt;
  opt.reduced = reduced;
  opt.cancel = cancel;
  return store_.emplace(key, scan(decorate(d), opt)).first->second;
}

ComplexPair ComplexCache::pair(const Diagram& d) {
  ComplexPair p;
  p.reduced = get(d, true);
  p.unreduced = get(d, false);
  return p;
}

}  // namespace tinv

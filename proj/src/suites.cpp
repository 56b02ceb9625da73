#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "tinv/checks.hpp"
#include "tinv/classical.hpp"
#include "tinv/oracle.hpp"

namespace tinv {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  CheckResult& r;
  Clock::time_point t0 = Clock::now();
  ~Timer() { r.seconds = std::chrono::duration<double>(Clock::now() - t0).count(); }
};

Poly y(int i) { return Poly::var(i); }

KoszulState state_of(std::vector<std::pair<Poly, Poly>> rows) {
  KoszulState s;
  int id = 0;
  for (auto& [a, b] : rows) {
    int de = a.is_zero() ? -b.internal_degree() - 3 : a.internal_degree() + 3;
    s.rows.push_back({a, b, id++, -de});
    s.base_degree += de;
  }
  return s;
}

ReductionStep compose(const ReductionStep& a, const ReductionStep& b) {
  return {b.project * a.project, a.include * b.include, a.homotopy + a.include * b.homotopy * a.project};
}

std::string table_string(const RankTable& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t) os << "(" << k.first << "," << k.second << "):" << v << " ";
  return os.str();
}

std::string seq_string(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Runs one case, turning an exception into a failure.
template <class F>
void guarded(CheckResult& r, const std::string& what, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    r.expect(false, what + ": " + e.what());
  }
}

}  // namespace

CheckResult local_suite() {
  CheckResult r{"local algebra"};
  Timer timer{r};
  auto x = symbolic_vars();
  const char* names[] = {"D0", "D1", "D+", "D-", "arc"};
  int i = 0;
  for (auto k : {PieceKind::D0, PieceKind::D1, PieceKind::Positive, PieceKind::Negative, PieceKind::Arc}) {
    auto c = elementary(k, x);
    auto rep = verify(c);
    r.expect(rep.ok, std::string(names[i]) + ": D^2 != w: " + rep.message);
    if (k != PieceKind::Arc) r.expect(c.potential() == piece_potential(x), std::string(names[i]) + ": wrong potential");
    ++i;
  }

  auto maps = local_maps(x);
  auto d0 = elementary(PieceKind::D0, x).differential();
  auto d1 = elementary(PieceKind::D1, x).differential();
  auto d1s = elementary(PieceKind::D1, x).shifted(1, 0).differential();
  auto d0s = elementary(PieceKind::D0, x).shifted(1, 0).differential();
  r.expect(maps.saddle_01 * d0 == d1s * maps.saddle_01, "saddle D0 -> D1 is not a chain map");
  r.expect(maps.saddle_10 * d1 == d0s * maps.saddle_10, "saddle D1 -> D0 is not a chain map");
  Poly m = -x[0] + x[1] + x[2] - x[3];
  r.expect(maps.i01 * d0 - d1 * maps.i01 == maps.saddle_01.scaled(m), "I_01 d0 - d1 I_01 != (-x0+x1+x2-x3) s");
  r.expect(maps.i10 * d1 - d0 * maps.i10 == maps.saddle_10.scaled(-m), "I_10 d1 - d0 I_10 != (x0-x1-x2+x3) s");
  auto pos = elementary(PieceKind::Positive, x);
  auto neg = elementary(PieceKind::Negative, x);
  r.expect(is_chain_map(neg, pos, maps.c_plus), "c+ is not a chain map");
  r.expect(is_chain_map(pos, neg, maps.c_minus), "c- is not a chain map");
  r.expect(maps.c_plus * maps.c_minus == SparseMap::identity(4), "c+ c- != 1");
  r.expect(maps.c_minus * maps.c_plus == SparseMap::identity(4), "c- c+ != 1");

  // Koszul nullhomotopies h D + D h = a_i or b_i.
  std::vector<Poly> a{y(0), y(1) - y(2), y(3)}, b{y(1) * y(2), y(0) * y(0), (y(1) - y(3)) * y(2)};
  auto k = koszul(a, b);
  r.expect(verify(k).ok, "Koszul factorization does not square to its potential");
  for (int row = 0; row < 3; ++row)
    for (bool wa : {true, false}) {
      auto h = koszul_nullhomotopy(a, b, row, wa);
      r.expect(h.map * k.differential() + k.differential() * h.map ==
                   SparseMap::identity(k.rank()).scaled(wa ? a[row] : b[row]),
               "nullhomotopy of row " + std::to_string(row) + (wa ? " a" : " b"));
    }

  // Basis changes of both kinds, permutations and negations.
  auto s = state_of({{y(0) - y(1), y(2) * y(3)}, {y(2), y(0) * y(1)}, {y(3), y(2) * y(2)}});
  Reduction red(s);
  red.push(move::FirstKind{0, {{1, y(3)}, {2, Poly(2)}}});
  red.push(move::SecondKind{1, {{0, Poly(1)}, {2, y(0)}}});
  red.push(move::Permute{2});
  red.push(move::Negate{1});
  auto e = check_reduction(red, 4);
  r.expect(e.empty(), "basis change: " + e);
  r.expect(red.current().potential() == s.potential(), "basis change altered the potential");

  // Variable elimination.
  auto s2 = state_of({{y(0) - y(1), y(2) * y(2)}, {y(2), -(y(0) - y(1)) * y(2)}});
  Reduction red2(s2);
  red2.eliminate_variable(0, 0, 1);
  e = check_reduction(red2, 3);
  r.expect(e.empty(), "variable elimination: " + e);

  // Gaussian elimination and the perturbation lemma on random complexes.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_filtered_complex(rng, 3, 2);
    auto tag = "random complex " + std::to_string(trial) + ": ";
    r.expect(verify(c).ok, tag + "D^2 != 0");
    MultiFact cur = c;
    for (int step = 0; step < 8; ++step) {
      int src = -1, tgt = -1;
      for (int j = 0; j < cur.rank() && src < 0; ++j)
        for (const auto& en : cur.differential().column(j))
          if (cur.shift(en.row, j) == 0 && en.value.is_unit()) {
            src = j;
            tgt = en.row;
            break;
          }
      if (src < 0) break;
      auto g = gauss_eliminate(cur, src, tgt);
      auto rep = check_sdr(cur, g.reduced, g.step);
      r.expect(rep.ok, tag + "elimination step: " + rep.message);
      cur = g.reduced;
    }
    MultiFact vertical(c.gens(), c.potential());
    vertical.differential() = c.bucket(0);
    std::vector<ReductionStep> steps;
    auto vred = cancel_units(vertical, 0, &steps);
    ReductionStep total{SparseMap::identity(c.rank()), SparseMap::identity(c.rank()), SparseMap(c.rank(), c.rank())};
    for (const auto& st : steps) total = compose(total, st);
    auto vrep = check_sdr(vertical, vred, total);
    r.expect(vrep.ok, tag + "vertical retract: " + vrep.message);
    auto out = perturb(c, {vred, total});
    auto prep = check_sdr(c, out.reduced, out.step);
    r.expect(prep.ok, tag + "perturbed retract: " + prep.message);
  }
  return r;
}

CheckResult delooping_suite() {
  CheckResult r{"delooping and closed diagrams"};
  Timer timer{r};
  // A single circle: b = x0^2 - x1^2 with no a-entry.
  auto s = state_of({{Poly(), y(0) * y(0) - y(1) * y(1)}});
  Reduction red(s);
  red.deloop(1, -1);
  r.expect(red.current().rows.empty() && red.current().copy_bits == 1, "one circle does not deloop to two copies");
  std::vector<int> deg;
  for (std::uint32_t c = 0; c < 2; ++c) deg.push_back(red.current().degree(kkey(c, 0)));
  std::sort(deg.begin(), deg.end());
  r.expect(deg == std::vector<int>{-1, 1}, "delooped degrees are not {-1, 1}");
  auto e = check_reduction(red, 2);
  r.expect(e.empty(), "delooping retract: " + e);

  // Crossingless unlinks: Z[x_1..x_n]/(x_i^2 - x_j^2){n-1}.
  for (int n = 1; n <= 3; ++n) {
    ScanOptions opt;
    opt.reduced = false;
    auto c = scan(decorate(unlink(n)), opt);
    auto th = total_homology(c, Coeff::rationals(), 8);
    auto expect = expected_link_homology(n, 8);
    r.expect(th.torsion_free, std::to_string(n) + "-component unlink has torsion");
    for (int d = 2; d >= -8; --d) {
      int got = th.ranks.count(d) ? th.ranks.at(d) : 0;
      int want = expect.count(d) ? expect.at(d) : 0;
      r.expect(got == want, std::to_string(n) + "-component unlink, degree " + std::to_string(d) + ": rank " +
                                std::to_string(got) + ", expected " + std::to_string(want));
    }
  }
  return r;
}

CheckResult oracle_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache) {
  CheckResult r{"E2 against the oracle"};
  Timer timer{r};
  int skipped = 0;
  for (const auto& k : knots) {
    guarded(r, k.name, [&] {
      if (k.diagram.num_crossings() > kOracleCrossingCap) {
        ++skipped;
        return;
      }
      const auto& c = cache.get(k.diagram, true);
      for (const char* f : {"Q", "F2"}) {
        Coeff field = field_by_name(f);
        auto e2 = e2_poincare(c, field);
        auto kh = kh_homology(k.diagram, KhVariant::Standard, true, field);
        r.expect(e2 == kh, k.name + " over " + f + ": E2 " + table_string(e2) + "vs Kh " + table_string(kh));
      }
    });
  }
  if (skipped) r.note = std::to_string(skipped) + " diagrams above the oracle cap skipped";
  return r;
}

CheckResult alternating_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache) {
  CheckResult r{"alternating calibration"};
  Timer timer{r};
  r.expect(signature(parse_braid("1 1 1", 2)) == -2, "signature of the closure of s1^3 is not -2");
  int count = 0;
  for (const auto& k : knots) {
    guarded(r, k.name, [&] {
      if (!k.alternating) return;
      ++count;
      int sigma = signature(k.diagram);
      r.expect(sigma == k.sigma, k.name + ": signature " + std::to_string(sigma) + ", table " + std::to_string(k.sigma));
      int t = t_invariant(cache.get(k.diagram, true), Coeff::rationals());
      r.expect(t == -sigma, k.name + ": t = " + std::to_string(t) + ", -sigma = " + std::to_string(-sigma));
      r.expect(gamma4_lower(t, sigma) == 0, k.name + ": nonzero gamma4 bound");
    });
  }
  r.note = std::to_string(count) + " alternating knots";
  return r;
}

CheckResult torus_suite(const std::vector<KnotRecord>& torus, ComplexCache& cache) {
  CheckResult r{"torus knots"};
  Timer timer{r};
  for (const auto& k : torus) {
    guarded(r, k.name, [&] {
      int p = 0, q = 0;
      if (std::sscanf(k.name.c_str(), "T%d_%d", &p, &q) != 2) {
        r.expect(false, k.name + ": name does not read Tp_q");
        return;
      }
      const auto& c = cache.get(k.diagram, true);
      int t = t_invariant(c, Coeff::rationals());
      int want = torus_t_expected(p, q);
      r.expect(t == want, k.name + ": t = " + std::to_string(t) + ", recurrence gives " + std::to_string(want));
      r.expect(t_fast(c, Coeff::rationals()) == t, k.name + ": fast path disagrees");
      int sigma = signature(k.diagram);
      r.expect(sigma == k.sigma, k.name + ": signature " + std::to_string(sigma));
      if (!k.alternating) {
        r.expect(t < -sigma, k.name + ": t is not below -sigma");
        r.expect(gamma4_lower(t, sigma) >= 1, k.name + ": gamma4 bound below 1");
      }
    });
  }
  return r;
}

CheckResult ti_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache, int brute_crossings) {
  CheckResult r{"T_i properties"};
  Timer timer{r};
  for (const auto& k : knots) {
    guarded(r, k.name, [&] {
      auto T = T_invariants(cache.get(k.diagram, false), 3);
      auto e = check_T_sequence(T);
      r.expect(e.empty(), k.name + ": " + e);
      r.expect(T.back() == 0, k.name + ": T = " + seq_string(T) + " has not reached 0");
      if (k.name == "3_1" || k.name == "m3_1") r.expect(T[1] == 0, k.name + ": T_1 != 0");
      const auto& red = cache.get(k.diagram, true);
      r.expect(t_fast(red, Coeff::rationals()) == t_invariant(red, Coeff::rationals()), k.name + ": t fast path differs");
      if (k.diagram.num_crossings() <= brute_crossings) {
        auto brute = T_invariants(cache.get(k.diagram, false, false), 3);
        r.expect(brute == T, k.name + ": uncancelled complex gives T = " + seq_string(brute) + ", cancelled " + seq_string(T));
        auto raw = cache.get(k.diagram, true, false);
        r.expect(t_invariant(raw, Coeff::rationals()) == t_invariant(red, Coeff::rationals()),
                 k.name + ": t differs on the uncancelled complex");
      }
    });
  }
  return r;
}

CheckResult invariance_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache) {
  CheckResult r{"diagram invariance"};
  Timer timer{r};
  struct Pair {
    const char* move;
    const char* a;
    const char* b;
  };
  const Pair pairs[] = {
      {"R1", "1 1 1", "1 1 1 2"},
      {"R1", "1 -2 1 -2", "1 -2 1 -2 -3"},
      {"R1", "1 1 1 1 1", "1 1 1 1 1 -2"},
      {"R1", "1 1 1 2 -1 2", "1 1 1 2 -1 2 3"},
      {"R1", "1 1 -2 1 -2 -2", "1 1 -2 1 -2 -2 -3"},
      {"R2", "1 1 1", "1 1 -1 1 1"},
      {"R2", "1 -2 1 -2", "1 2 -2 -2 1 -2"},
      {"R2", "1 1 1 1 1", "1 1 1 -1 1 1 1"},
      {"R2", "1 1 1 2 -1 2", "1 1 1 2 -2 2 -1 2"},
      {"R2", "1 1 -2 1 -2 -2", "1 -1 1 1 -2 1 -2 -2"},
      {"R3", "1 2 1 2", "2 1 2 2"},
      {"R3", "1 1 1 2 -1 2", "1 1 -2 1 2 2"},
      {"R3", "1 1 1 1 1 2 -1 2", "1 1 1 1 -2 1 2 2"},
      {"R3", "1 1 1 1 2 -1 2 2", "1 1 1 -2 1 2 2 2"},
      {"R3", "1 1 1 2 1 1 1 2", "1 1 2 1 2 1 1 2"},
  };
  ReportOptions opt;
  opt.i_max = 3;
  for (const auto& p : pairs) {
    guarded(r, p.a, [&] {
      auto tag = std::string(p.move) + " [" + p.a + "] ~ [" + p.b + "]: ";
      auto da = parse_braid(p.a, 0), db = parse_braid(p.b, 0);
      r.expect(jones_polynomial(da) == jones_polynomial(db), tag + "Jones polynomials differ, not the same knot");
      auto ca = cache.pair(da), cb = cache.pair(db);
      auto ra = compute_report(da, opt, &ca), rb = compute_report(db, opt, &cb);
      r.expect(ra.t == rb.t, tag + "t differs");
      r.expect(ra.T == rb.T, tag + "T differs: " + seq_string(ra.T) + " vs " + seq_string(rb.T));
      r.expect(ra.e2 == rb.e2, tag + "E2 differs");
    });
  }

  // Crossing changes at a positive crossing: t(K-) <= t(K+) <= t(K-) + 2.
  int pairs_done = 0;
  for (const auto& k : knots) {
    if (pairs_done == 5) break;
    const auto& d = k.diagram;
    auto it = std::find(d.signs.begin(), d.signs.end(), 1);
    if (it == d.signs.end() || d.num_crossings() > 7) continue;
    auto minus = d.crossing_change(static_cast<int>(it - d.signs.begin()));
    ++pairs_done;
    guarded(r, k.name + " crossing change", [&] {
      int tp = t_invariant(cache.get(d, true), Coeff::rationals());
      int tm = t_invariant(cache.get(minus, true), Coeff::rationals());
      r.expect(tm <= tp && tp <= tm + 2, k.name + " crossing change: t(K+) = " + std::to_string(tp) +
                                             ", t(K-) = " + std::to_string(tm));
    });
  }
  r.expect(pairs_done == 5, "fewer than five crossing-change pairs available");
  return r;
}

CheckResult parity_suite(const std::vector<KnotRecord>& knots, ComplexCache& cache) {
  CheckResult r{"parity and total homology"};
  Timer timer{r};
  auto expect = expected_link_homology(1, 8);
  for (const auto& k : knots) {
    guarded(r, k.name, [&] {
      for (bool reduced : {true, false}) {
        const auto& c = cache.get(k.diagram, reduced);
        for (int s : c.shifts())
          r.expect(s % 2 != 0, k.name + (reduced ? " reduced" : " unreduced") + ": even shift " + std::to_string(s));
        r.expect(c.squares_to_zero(), k.name + ": D^2 != 0");
      }
      auto th = total_homology(cache.get(k.diagram, false), Coeff::rationals(), 8);
      r.expect(th.torsion_free, k.name + ": total homology has torsion");
      for (int d = 2; d >= -8; --d) {
        int got = th.ranks.count(d) ? th.ranks.at(d) : 0;
        int want = expect.count(d) ? expect.at(d) : 0;
        r.expect(got == want, k.name + ": total homology in degree " + std::to_string(d) + " has rank " +
                                  std::to_string(got) + ", expected " + std::to_string(want));
      }
    });
  }
  return r;
}


CheckResult whitehead_suite() {
  CheckResult r{"Whitehead double"};
  Timer timer{r};
  // Published Poincare polynomial, (q, h) -> rank.
  const RankTable published = {
      {{18, 9}, 1}, {{16, 8}, 2}, {{14, 7}, 1}, {{12, 6}, 1}, {{10, 5}, 2}, {{10, 4}, 1},
      {{8, 4}, 1},  {{8, 3}, 2},  {{8, 2}, 1},  {{6, 2}, 1},  {{6, 1}, 1},  {{4, 1}, 1},
      {{4, 0}, 1},  {{2, 0}, 2},  {{-2, -1}, 2}, {{0, -2}, 1}, {{-2, -3}, 1}, {{-4, -4}, 1}};
  guarded(r, "Whitehead double", [&] {
    auto knots = load_knots(data_dir() + "/whitehead.tsv");
    r.expect(knots.size() == 1, "expected one diagram in whitehead.tsv");
    const auto& k = knots.at(0);
    r.expect(k.diagram.is_knot() && k.diagram.num_crossings() == k.crossings,
             k.name + ": not a knot with the listed crossings");
    r.expect(signature(k.diagram) == k.sigma, k.name + ": signature " + std::to_string(signature(k.diagram)));
    auto jones = jones_polynomial(k.diagram);
    auto chi = euler_characteristic(published);
    std::erase_if(jones, [](const auto& e) { return e.second == 0; });
    std::erase_if(chi, [](const auto& e) { return e.second == 0; });
    if (jones != chi) {
      std::ostringstream os;
      for (int e = -30; e <= 30; ++e) {
        long d = (jones.count(e) ? jones[e] : 0) - (chi.count(e) ? chi[e] : 0);
        if (d) os << " " << (d > 0 ? "+" : "") << d << "q^" << e;
      }
      r.expect(false, k.name + ": Jones polynomial minus Euler characteristic of the published table =" + os.str());
    } else {
      r.expect(true, "");
    }
    ScanOptions opt;
    opt.cap = default_cap();
    auto c = scan(decorate(k.diagram), opt);
    auto e2 = e2_poincare(c, field_by_name("F3"));
    r.expect(e2 == published, k.name + ": E2 over F3 " + table_string(e2));
    int t = t_invariant(c, Coeff::rationals());
    r.expect(t == 2, k.name + ": t = " + std::to_string(t));
  });
  return r;
}

}  // namespace tinv

#include "doctest.h"
#include "tinv/invariants.hpp"

using namespace tinv;

namespace {

ReducedComplex build(const Diagram& d, bool reduced, bool cancel = true) {
  ScanOptions opt;
  opt.reduced = reduced;
  opt.cancel = cancel;
  return scan(decorate(d), opt);
}

const Coeff kQ = Coeff::rationals();

}  // namespace

TEST_CASE("lattice membership and kernels") {
  Matrix m(1, 3);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(0, 2) = -6;
  auto ker = integer_kernel(m);
  CHECK(ker.size() == 2);
  Lattice lat(3);
  for (const auto& v : ker) lat.add(v);
  CHECK(lat.contains({1, 1, 1}));
  CHECK(lat.contains({-2, 1, 0}));
  CHECK_FALSE(lat.contains({1, 0, 0}));
  Lattice ev(2);
  ev.add({2, 0});
  ev.add({0, 4});
  ev.add({2, 2});
  CHECK(ev.contains({0, 2}));
  CHECK_FALSE(ev.contains({1, 0}));
  Matrix s(2, 2);
  s.at(0, 0) = 2;
  s.at(1, 1) = 3;
  auto diag = smith_diagonal(s);
  REQUIRE(diag.size() == 2);
  CHECK(diag[0] * diag[1] == 6);
  CHECK((diag[0] == 1 || diag[1] == 1));
}

TEST_CASE("torus recurrence") {
  CHECK(torus_t_expected(2, 3) == 2);
  CHECK(torus_t_expected(2, 5) == 4);
  CHECK(torus_t_expected(2, 7) == 6);
  CHECK(torus_t_expected(3, 4) == 4);
  CHECK(torus_t_expected(3, 5) == 6);
  CHECK_THROWS(torus_t_expected(2, 4));
}

TEST_CASE("t of small knots") {
  auto u = build(unlink(1), true);
  CHECK(t_invariant(u, kQ) == 0);
  CHECK(t_fast(u, kQ) == 0);
  auto tr = build(parse_braid("1 1 1", 2), true);
  for (auto k : {kQ, Coeff::prime_field(2), Coeff::prime_field(3)}) {
    CHECK(t_invariant(tr, k) == 2);
    CHECK(t_fast(tr, k) == 2);
  }
  auto e2 = e2_poincare(tr, kQ);
  CHECK(e2 == RankTable{{{2, 0}, 1}, {{6, 2}, 1}, {{8, 3}, 1}});
  auto fig8 = build(parse_braid("1 -2 1 -2", 3), true);
  CHECK(t_invariant(fig8, kQ) == 0);
}

TEST_CASE("T invariants of the trefoil") {
  for (bool cancel : {true, false}) {
    auto c = build(parse_braid("1 1 1", 2), false, cancel);
    auto t = T_invariants(c, 3);
    REQUIRE(t.size() == 4);
    CHECK(t[1] == 0);
    for (int v : t) CHECK(v % 2 == 0);
    MESSAGE("trefoil T: " << t[0] << " " << t[1] << " " << t[2] << " " << t[3]);
  }
  auto u = build(unlink(1), false);
  CHECK(T_invariants(u, 2) == std::vector<int>{0, 0, 0});
}

TEST_CASE("total homology") {
  auto c = build(parse_braid("1 1 1", 2), false);
  auto th = total_homology(c, kQ, 8);
  CHECK(th.torsion_free);
  auto exp = expected_link_homology(1, 8);
  for (auto [deg, r] : th.ranks) CHECK(r == (exp.count(deg) ? exp[deg] : 0));
  auto u2 = build(unlink(2), false);
  auto th2 = total_homology(u2, kQ, 8);
  auto exp2 = expected_link_homology(2, 8);
  CHECK(exp2[1] == 1);
  CHECK(exp2[-1] == 2);
  for (auto [deg, r] : th2.ranks) CHECK(r == (exp2.count(deg) ? exp2[deg] : 0));
}

#include <random>

#include "doctest.h"
#include "tinv/checks.hpp"

using namespace tinv;

namespace {

Poly y(int i) { return Poly::var(i); }

ReductionStep compose(const ReductionStep& a, const ReductionStep& b) {
  return {b.project * a.project, a.include * b.include, a.homotopy + a.include * b.homotopy * a.project};
}

}  // namespace

TEST_CASE("Koszul factorizations square to the potential") {
  Poly a = y(0) - y(2), b = (y(1) - y(3)) * (y(1) - y(2) + y(3) - y(0));
  auto k = koszul({a}, {b});
  CHECK(k.rank() == 2);
  CHECK(verify(k).ok);
  CHECK(k.potential() == a * b);
  auto k2 = koszul({y(0), y(1)}, {y(2) * y(3), y(0) * y(0)});
  CHECK(verify(k2).ok);
  CHECK(k2 == k2);
  CHECK(k2.potential() == y(0) * y(2) * y(3) + y(1) * y(0) * y(0));
  auto t = tensor(koszul({y(0)}, {y(2) * y(3)}), koszul({y(1)}, {y(0) * y(0)}));
  CHECK(t.differential() == k2.differential());
}

TEST_CASE("a flipped entry breaks verification") {
  auto k = koszul({y(0), y(1)}, {y(2) * y(3), y(0) * y(0)});
  auto bad = k;
  bad.differential().set(1, 0, -bad.entry(1, 0));
  CHECK_FALSE(verify(bad).ok);
}

TEST_CASE("Koszul nullhomotopies") {
  std::vector<Poly> a{y(0), y(1) - y(2)}, b{y(1) * y(2), y(0) * y(0)};
  auto k = koszul(a, b);
  for (int row = 0; row < 2; ++row)
    for (bool wa : {true, false}) {
      auto h = koszul_nullhomotopy(a, b, row, wa);
      auto lhs = h.map * k.differential() + k.differential() * h.map;
      CHECK(lhs == SparseMap::identity(k.rank()).scaled(wa ? a[row] : b[row]));
    }
}

TEST_CASE("Gaussian elimination gives an SDR") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_filtered_complex(rng, 3, 2);
    REQUIRE(verify(c).ok);
    std::vector<ReductionStep> steps;
    auto r = cancel_units(c, 0, &steps);
    MultiFact cur = c;
    for (int s = 0; s < 8; ++s) {
      int src = -1, tgt = -1;
      for (int j = 0; j < cur.rank() && src < 0; ++j)
        for (const auto& e : cur.differential().column(j))
          if (cur.shift(e.row, j) == 0 && e.value.is_unit()) {
            src = j;
            tgt = e.row;
            break;
          }
      if (src < 0) break;
      auto g = gauss_eliminate(cur, src, tgt);
      CHECK(check_sdr(cur, g.reduced, g.step).ok);
      CHECK(verify(g.reduced).ok);
      CHECK(g.reduced.rank() == cur.rank() - 2);
      cur = g.reduced;
    }
    CHECK(r.rank() == cur.rank());
  }
}

TEST_CASE("perturbation lemma on random filtered complexes") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_filtered_complex(rng, 3, 2);
    MultiFact vertical(c.gens(), c.potential());
    vertical.differential() = c.bucket(0);
    std::vector<ReductionStep> steps;
    auto vred = cancel_units(vertical, 0, &steps);
    ReductionStep total{SparseMap::identity(c.rank()), SparseMap::identity(c.rank()), SparseMap(c.rank(), c.rank())};
    for (const auto& s : steps) total = compose(total, s);
    REQUIRE(check_sdr(vertical, vred, total).ok);
    auto out = perturb(c, {vred, total});
    auto rep = check_sdr(c, out.reduced, out.step);
    CHECK_MESSAGE(rep.ok, rep.message);
    CHECK(verify(out.reduced).ok);
  }
}

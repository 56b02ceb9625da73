#include "doctest.h"
#include "tinv/scan.hpp"

using namespace tinv;

namespace {

ReducedComplex build(const Diagram& d, bool reduced, bool cancel = true) {
  ScanOptions opt;
  opt.reduced = reduced;
  opt.cancel = cancel;
  return scan(decorate(d), opt);
}

}  // namespace

TEST_CASE("unknot and unlinks") {
  auto u = build(unlink(1), true);
  CHECK(u.rank() == 1);
  CHECK(u.gens[0] == Bidegree{0, 0});
  auto u2 = build(unlink(2), true);
  CHECK(u2.rank() == 2);
  auto uu = build(unlink(3), false);
  CHECK(uu.rank() == 4);
}

TEST_CASE("vertex reductions have the circle count") {
  auto dd = decorate(parse_braid("1 1 1", 2));
  for (std::uint32_t v = 0; v < 8; ++v) {
    auto r = reduce_vertex(dd, v, true);
    CHECK(r.red.current().rows.empty());
    CHECK(r.red.current().copy_bits == r.num_circles - 1);
  }
}

TEST_CASE("trefoil complexes square to zero") {
  for (bool reduced : {true, false})
    for (bool cancel : {false, true}) {
      auto c = build(parse_braid("1 1 1", 2), reduced, cancel);
      CHECK(c.squares_to_zero());
      for (int s : c.shifts()) CHECK(s % 2 != 0);
    }
  auto c = build(parse_braid("1 1 1", 2), true);
  CHECK(c.rank() == 3);
}

TEST_CASE("figure eight and torus knots") {
  for (const char* w : {"1 -2 1 -2", "1 1 1 2 1 1 1 2", "1 2 1 2 1 2 1 2"}) {
    auto c = build(parse_braid(w, 0), true);
    CHECK(c.squares_to_zero());
    CHECK(c.rank() % 2 == 1);
  }
}

TEST_CASE("resource limits") {
  auto d = decorate(parse_braid("1 -2 1 -2 1 -2 1 -2", 3));
  ScanOptions opt;
  opt.cap = 10;
  CHECK_THROWS_AS(scan(d, opt), ResourceCapExceeded);
  opt.cap = std::size_t(1) << 20;
  opt.memory_budget = 1;
  CHECK_THROWS_AS(scan(d, opt), ResourceCapExceeded);
}

#include "doctest.h"
#include "tinv/checks.hpp"

using namespace tinv;

namespace {

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

}  // namespace

TEST_CASE("exterior signs") {
  std::uint32_t out = 0;
  CHECK(wedge(0, 0b110, out) == 1);
  CHECK(out == 0b111);
  CHECK(wedge(2, 0b011, out) == 1);
  CHECK(wedge(2, 0b001, out) == -1);
  CHECK(contract(1, 0b011, out) == -1);
  CHECK(out == 0b001);
  CHECK(contract(1, 0b001, out) == 0);
}

TEST_CASE("Koszul state squares to the potential") {
  auto s = state_of({{y(0) - y(1), y(2) * y(2)}, {y(2), -(y(0) - y(1)) * y(2)}});
  CHECK(s.potential().is_zero());
  KVec v;
  v.add(kkey(0, 0), Poly(1));
  CHECK(s.apply_d(s.apply_d(v)).is_zero());
}

TEST_CASE("basis changes are isomorphisms of factorizations") {
  auto s = state_of({{y(0) - y(1), y(2) * y(3)}, {y(2), y(0) * y(1)}, {y(3), y(2) * y(2)}});
  Reduction r(s);
  r.push(move::FirstKind{0, {{1, y(3)}, {2, Poly(2)}}});
  r.push(move::SecondKind{1, {{0, Poly(1)}, {2, y(0)}}});
  r.push(move::Permute{2});
  r.push(move::Negate{1});
  CHECK(check_reduction(r, 4) == "");
  CHECK(r.current().potential() == s.potential());
}

TEST_CASE("variable elimination") {
  auto s = state_of({{y(0) - y(1), y(2) * y(2)}, {y(2), -(y(0) - y(1)) * y(2)}});
  Reduction r(s);
  r.eliminate_variable(0, 0, 1);
  CHECK(r.current().rows.size() == 1);
  CHECK(check_reduction(r, 3) == "");
}

TEST_CASE("variable elimination against the gauge") {
  auto s = state_of({{y(1) - y(0), y(2) * y(0)}, {y(0), y(1) * y(2) - y(2) * y(2)},
                     {y(2) - y(0), y(0) * y(0) - y(1) * y(1)}});
  CHECK(s.potential().is_zero() == false);
}

TEST_CASE("delooping an unlink") {
  // Three circles side by side with arcs: b = x_i^2 - x_{i+1}^2.
  auto s = state_of({{Poly(), y(0) * y(0) - y(1) * y(1)}, {Poly(), y(1) * y(1) - y(2) * y(2)}});
  Reduction r(s);
  r.deloop(2, -1);
  r.deloop(1, -1);
  CHECK(r.current().rows.empty());
  CHECK(r.current().copy_bits == 2);
  CHECK(check_reduction(r, 3) == "");
  // Generator degrees {2, 0, 0, -2}.
  std::vector<int> deg;
  for (std::uint32_t c = 0; c < 4; ++c) deg.push_back(r.current().degree(kkey(c, 0)));
  CHECK(deg == std::vector<int>{2, 0, 0, -2});
}

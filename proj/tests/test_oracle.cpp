#include "doctest.h"
#include "tinv/oracle.hpp"

using namespace tinv;

namespace {

const Coeff kQ = Coeff::rationals();

std::map<int, long> times_unknot(const std::map<int, long>& j) {
  std::map<int, long> out;
  for (auto [e, c] : j) {
    out[e + 1] += c;
    out[e - 1] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST_CASE("oracle on the unknot and trefoil") {
  CHECK(kh_homology(unlink(1), KhVariant::Standard, true, kQ) == RankTable{{{0, 0}, 1}});
  CHECK(kh_homology(unlink(1), KhVariant::Standard, false, kQ) == RankTable{{{1, 0}, 1}, {{-1, 0}, 1}});
  auto tr = parse_braid("1 1 1", 2);
  CHECK(kh_homology(tr, KhVariant::Standard, true, kQ) == RankTable{{{2, 0}, 1}, {{6, 2}, 1}, {{8, 3}, 1}});
  CHECK(kh_homology(tr, KhVariant::Standard, false, kQ) ==
        RankTable{{{1, 0}, 1}, {{3, 0}, 1}, {{5, 2}, 1}, {{9, 3}, 1}});
  auto f2 = kh_homology(tr, KhVariant::Standard, false, Coeff::prime_field(2));
  CHECK(f2.size() == 6);
}

TEST_CASE("Jones polynomial and Euler characteristic") {
  CHECK(jones_polynomial(parse_braid("1 1 1", 2)) == std::map<int, long>{{2, 1}, {6, 1}, {8, -1}});
  CHECK(jones_polynomial(unlink(1)) == std::map<int, long>{{0, 1}});
  for (const char* w : {"1 1 1", "-1 -1 -1", "1 -2 1 -2", "1 1 1 1 1", "1 2 1 2 1 2 1 2", "1 1 1 2 -1 2"}) {
    auto d = parse_braid(w, 0);
    auto j = jones_polynomial(d);
    CHECK(euler_characteristic(kh_homology(d, KhVariant::Standard, true, kQ)) == j);
    CHECK(euler_characteristic(kh_homology(d, KhVariant::Standard, false, kQ)) == times_unknot(j));
  }
}

TEST_CASE("F3 variant has Lee-type rank") {
  for (const char* w : {"1 1 1", "1 -2 1 -2"}) {
    auto t = kh_homology(parse_braid(w, 0), KhVariant::F3, false, kQ);
    int total = 0;
    for (auto [k, r] : t) total += r;
    CHECK(total == 2);
  }
}

TEST_CASE("F3 Frobenius maps") {
  Poly one(1), zero;
  F3Pair unit;
  unit.c[0][0] = one;
  CHECK(f3_merge(unit) == F3Elem{one, zero});
  F3Pair s = f3_split(F3Elem{one, zero});
  CHECK(s.c[1][0] == one);
  CHECK(s.c[0][1] == one);
  CHECK(s.c[0][0].is_zero());
  CHECK(s.c[1][1].is_zero());
  // merge(split(a)) = 2x a.
  Poly h = Poly::var(0);
  for (auto a : {F3Elem{one, zero}, F3Elem{zero, one}, F3Elem{Poly(3), h}}) {
    F3Elem twice_x{(a.c1 * h).scaled(2), a.c0.scaled(2)};
    CHECK(f3_merge(f3_split(a)) == twice_x);
  }
}

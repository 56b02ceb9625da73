#include <sstream>

#include "doctest.h"
#include "tinv/tangle.hpp"

using namespace tinv;

TEST_CASE("parse the trefoil PD code") {
  auto d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
  CHECK(d.num_crossings() == 3);
  CHECK(d.num_edges == 6);
  CHECK(d.num_components == 1);
  CHECK(d.writhe() == -3);
  auto dd = compute_regions(d);
  CHECK(dd.num_regions == 5);
  CHECK(d.to_pd() == "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
  CHECK(d.mirror().writhe() == 3);
  CHECK(d.crossing_change(0).writhe() == -1);
}

TEST_CASE("PD parse errors") {
  CHECK_THROWS_AS(parse_pd("PD[X(1,2,3)]"), ParseError);
  CHECK_THROWS_AS(parse_pd("X(1,2,3,4)"), ParseError);
  CHECK_THROWS_AS(parse_pd("PD[X(1,2,3,4)]"), ParseError);
  CHECK_THROWS_AS(parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3),]"), ParseError);
}

TEST_CASE("unknot and unlinks") {
  auto u = parse_pd("PD[]");
  CHECK(u.num_crossings() == 0);
  CHECK(u.num_components == 1);
  CHECK(compute_regions(u).num_regions == 2);
  auto u2 = parse_braid("", 2);
  CHECK(u2.num_components == 2);
  CHECK(decorate(u2).arcs.size() == 1);
}

TEST_CASE("braid closures") {
  auto t = parse_braid("1 1 1", 2);
  CHECK(t.num_crossings() == 3);
  CHECK(t.writhe() == 3);
  CHECK(t.num_components == 1);
  CHECK(compute_regions(t).num_regions == 5);
  auto t34 = parse_braid("1 2 1 2 1 2 1 2", 3);
  CHECK(t34.num_crossings() == 8);
  CHECK(t34.num_components == 1);
  CHECK(compute_regions(t34).num_regions == 10);
  auto fig8 = parse_braid("1 -2 1 -2", 3);
  CHECK(fig8.writhe() == 0);
  CHECK(compute_regions(fig8).num_regions == 6);
  CHECK_THROWS_AS(parse_braid("1 3", 3), ParseError);
  CHECK_THROWS_AS(compute_regions(parse_braid("1 1 1", 3)), UnsupportedDiagram);
}

TEST_CASE("elementary factorizations") {
  auto x = symbolic_vars();
  for (auto k : {PieceKind::D0, PieceKind::D1, PieceKind::Positive, PieceKind::Negative, PieceKind::Arc}) {
    auto c = elementary(k, x);
    CHECK(verify(c).ok);
  }
  CHECK(elementary(PieceKind::Positive, x).potential() == piece_potential(x));
  CHECK(elementary(PieceKind::Negative, x).potential() == piece_potential(x));
  auto bad = elementary(PieceKind::Positive, x);
  bad.differential().set(3, 0, Poly(1));
  auto rep = verify(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failing_bucket == 1);
}

TEST_CASE("local map identities") {
  auto x = symbolic_vars();
  auto maps = local_maps(x);
  auto d0 = elementary(PieceKind::D0, x).differential();
  auto d1 = elementary(PieceKind::D1, x).differential();
  auto d1s = elementary(PieceKind::D1, x).shifted(1, 0).differential();
  auto d0s = elementary(PieceKind::D0, x).shifted(1, 0).differential();
  CHECK(maps.saddle_01 * d0 == d1s * maps.saddle_01);
  CHECK(maps.saddle_10 * d1 == d0s * maps.saddle_10);
  Poly m = -x[0] + x[1] + x[2] - x[3];
  CHECK(maps.i01 * d0 - d1 * maps.i01 == maps.saddle_01.scaled(m));
  CHECK(maps.i10 * d1 - d0 * maps.i10 == maps.saddle_10.scaled(-m));
  auto pos = elementary(PieceKind::Positive, x);
  auto neg = elementary(PieceKind::Negative, x);
  CHECK(is_chain_map(neg, pos, maps.c_plus));
  CHECK(is_chain_map(pos, neg, maps.c_minus));
  CHECK(maps.c_plus * maps.c_minus == SparseMap::identity(4));
  CHECK(maps.c_minus * maps.c_plus == SparseMap::identity(4));
}

TEST_CASE("diagram tables") {
  std::istringstream in("# comment\n3_1\tbraid\t1 1 1\t3\tY\t-2\n\nu\tpd\tPD[]\n");
  auto rows = read_table(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].line == 2);
  CHECK(rows[0].extra == std::vector<std::string>{"3", "Y", "-2"});
  CHECK(parse_input(rows[0].format, rows[0].payload).num_crossings() == 3);
  CHECK(parse_input(rows[1].format, rows[1].payload).num_crossings() == 0);
  std::istringstream bad("3_1 braid 1 1 1\n");
  CHECK_THROWS_AS(read_table(bad), ParseError);
  CHECK_THROWS_AS(parse_input("dt", "4 6 2"), ParseError);
}

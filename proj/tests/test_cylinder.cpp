#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plf/cylinder.hpp"

using namespace plf;
using plftest::Rng;

namespace {

CylPoint cyl(const Graph& g, int e, const Rat& t, const Rat& y) {
  return {GraphPoint::on_edge(g, e, t), y};
}

// One-piece straight set over [lo, hi] of edge 0 with given breakpoints.
StraightSet one_piece(const Graph& g, std::vector<std::pair<Rat, Rat>> bp) {
  StraightSet s;
  s.base = make_set(g, {{0, {bp.front().first, bp.back().first}}});
  s.pieces.assign(g.edges.size(), {});
  SheetPiece p;
  p.edge = 0;
  p.bp = std::move(bp);
  s.pieces[0].push_back(std::move(p));
  return s;
}

}  // namespace

TEST_CASE("cylinder point sets") {
  Graph g = make_arc();
  CylPointSet s;
  s.insert(cyl(g, 0, Rat(1, 3), Rat(1, 2)));
  s.insert(cyl(g, 0, Rat(1, 3), Rat(1, 2)));
  s.insert(cyl(g, 0, Rat(2, 3), Rat(1, 4)));
  CHECK(s.size() == 2);
  CHECK(s.contains(cyl(g, 0, Rat(1, 3), Rat(1, 2))));
  CHECK(!s.contains(cyl(g, 0, Rat(1, 3), Rat(1, 4))));
  CHECK(s.project().size() == 2);

  CylPointSet t;
  t.insert(cyl(g, 0, Rat(2, 3), Rat(1, 4)));
  CHECK(cps_subset(t, s));
  CHECK(cps_union(s, t) == s);
  CHECK(cps_intersection(s, t) == t);
  CHECK(cps_difference(s, t).size() == 1);
  CHECK(!cps_disjoint(s, t));
}

TEST_CASE("constant sheet") {
  for (const Graph& g : {make_arc(), make_circle(), make_triod()}) {
    StraightSet s = make_constant_sheet(g, Rat(1, 2));
    CHECK(straight_valid(g, s));
    CHECK(s.base == make_full_set(g));
    CHECK(end_set(g, s).empty());
    CHECK(*evaluate(g, s, GraphPoint::on_edge(g, 0, Rat(1, 3))) == Rat(1, 2));
    CHECK(*evaluate(g, s, GraphPoint::at_vertex(0)) == Rat(1, 2));
  }
}

TEST_CASE("evaluate interpolates and end sets sit over the base boundary") {
  Graph g = make_arc();
  StraightSet s = one_piece(g, {{0, 0}, {1, 1}});
  CHECK(*evaluate(g, s, GraphPoint::on_edge(g, 0, Rat(1, 3))) == Rat(1, 3));
  CHECK(end_set(g, s).empty());  // base is the whole arc

  StraightSet p = one_piece(g, {{Rat(1, 4), Rat(1, 3)}, {Rat(3, 4), Rat(2, 3)}});
  CHECK(straight_valid(g, p));
  CylPointSet e = end_set(g, p);
  REQUIRE(e.size() == 2);
  CHECK(e.contains(cyl(g, 0, Rat(1, 4), Rat(1, 3))));
  CHECK(e.contains(cyl(g, 0, Rat(3, 4), Rat(2, 3))));
  CHECK(!evaluate(g, p, GraphPoint::on_edge(g, 0, Rat(1, 8))));
}

TEST_CASE("straight validity diagnostics") {
  Graph g = make_arc();
  StraightSet bad = one_piece(g, {{0, 0}, {1, Rat(3, 2)}});
  std::string why;
  CHECK(!straight_valid(g, bad, &why));
  CHECK(!why.empty());

  StraightSet dot = make_constant_sheet(g, Rat(1, 2));
  dot.base.isolated.insert(GraphPoint::on_edge(g, 0, Rat(1, 2)));
  CHECK(!straight_valid(g, dot));

  // Pieces meeting a common vertex must agree there (π one-to-one).
  Graph triod = make_triod();
  StraightSet v;
  v.base = make_set(triod, {{0, {0, 1}}, {1, {0, 1}}});
  v.pieces.assign(triod.edges.size(), {});
  v.pieces[0].push_back({0, {{0, Rat(1, 4)}, {1, Rat(1, 4)}}});
  v.pieces[1].push_back({1, {{0, Rat(3, 4)}, {1, Rat(3, 4)}}});
  CHECK(!straight_valid(triod, v));
  v.pieces[1][0].bp = {{0, Rat(1, 4)}, {1, Rat(3, 4)}};
  CHECK(straight_valid(triod, v));
}

TEST_CASE("piece surgery") {
  SheetPiece p{0, {{0, 0}, {Rat(1, 2), Rat(1, 2)}, {1, 1}}};
  canonicalize_piece(p);
  CHECK(p.bp.size() == 2);  // collinear midpoint dropped
  SheetPiece q{0, {{0, 0}, {Rat(1, 2), 1}, {1, 0}}};
  canonicalize_piece(q);
  CHECK(q.bp.size() == 3);
  SheetPiece r = piece_segment(q, Rat(1, 4), Rat(3, 4));
  CHECK(r.t_min() == Rat(1, 4));
  CHECK(r.t_max() == Rat(3, 4));
  CHECK(r.value_at(Rat(1, 4)) == Rat(1, 2));
  CHECK(r.value_at(Rat(1, 2)) == 1);
}

TEST_CASE("restriction and union of straight sets") {
  Graph g = make_arc();
  StraightSet s = one_piece(g, {{0, 0}, {1, 1}});
  auto r = restrict_straight(g, s, make_set(g, {{0, {Rat(1, 4), Rat(1, 2)}}}));
  REQUIRE(r);
  CHECK(straight_valid(g, *r));
  CHECK(*evaluate(g, *r, GraphPoint::on_edge(g, 0, Rat(1, 3))) == Rat(1, 3));
  CHECK(!evaluate(g, *r, GraphPoint::on_edge(g, 0, Rat(2, 3))));

  // Restriction producing an isolated base point is rejected.
  ClosedSet left = make_set(g, {{0, {0, Rat(1, 4)}}});
  StraightSet sl = one_piece(g, {{Rat(1, 4), Rat(1, 2)}, {1, 1}});
  CHECK(!restrict_straight(g, sl, left));

  // Union of sheets agreeing on the overlap.
  StraightSet a = one_piece(g, {{0, 0}, {Rat(1, 2), Rat(1, 2)}});
  StraightSet b = one_piece(g, {{Rat(1, 2), Rat(1, 2)}, {1, 1}});
  auto u = union_straight(g, {a, b});
  REQUIRE(u);
  CHECK(u->base == make_full_set(g));
  CHECK(*evaluate(g, *u, GraphPoint::on_edge(g, 0, Rat(3, 4))) == Rat(3, 4));
  // Conflicting heights on overlap: no straight union.
  StraightSet c = one_piece(g, {{Rat(1, 4), 1}, {1, 0}});
  CHECK(!union_straight(g, {a, c}));
}

TEST_CASE("sheet disjointness") {
  Graph g = make_arc();
  StraightSet lo = make_constant_sheet(g, Rat(1, 4));
  StraightSet hi = make_constant_sheet(g, Rat(3, 4));
  CHECK(sheets_disjoint(g, lo, hi, {}));
  StraightSet rise = one_piece(g, {{0, 0}, {1, 1}});
  // rise crosses the 1/4 sheet at exactly one point.
  CHECK(!sheets_disjoint(g, lo, rise, {}));
  CylPointSet allowed;
  allowed.insert(cyl(g, 0, Rat(1, 4), Rat(1, 4)));
  CHECK(sheets_disjoint(g, lo, rise, allowed));
  // Positive-length overlap is never allowed.
  CHECK(!sheets_disjoint(g, lo, lo, allowed));
}

TEST_CASE("tubes") {
  Graph g = make_arc();
  Tube t{{make_constant_sheet(g, Rat(1, 2))}, Rat(1, 8)};
  CHECK(tube_contains(g, t, cyl(g, 0, Rat(1, 3), Rat(1, 2))));
  CHECK(tube_contains(g, t, cyl(g, 0, Rat(1, 3), Rat(5, 8))));
  CHECK(!tube_contains(g, t, cyl(g, 0, Rat(1, 3), Rat(3, 4))));
}

TEST_CASE("corpus straight-set figure") {
  Document d = plftest::load_corpus("straight.json");
  CHECK(d.kind == DocKind::Stairwell);
  CHECK(d.partial);
  REQUIRE(d.stairwell.levels.size() == 1);
  CHECK(straight_valid(d.stairwell.g, d.stairwell.levels[0]));
  CHECK(end_set(d.stairwell.g, d.stairwell.levels[0]).size() ==
        boundary(d.stairwell.g, d.stairwell.levels[0].base).size());
}

TEST_CASE("random sheets are straight and ends match base boundary") {
  Rng rng(99);
  for (int it = 0; it < 50; ++it) {
    Graph g = plftest::random_graph(rng);
    ClosedSet base = plftest::random_regular_set(g, rng);
    StraightSet s = plftest::random_sheet(g, base, rng);
    REQUIRE(straight_valid(g, s));
    CHECK(end_set(g, s).project() == boundary(g, base));
  }
}

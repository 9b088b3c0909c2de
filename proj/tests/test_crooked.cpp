#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plf/crooked.hpp"

using namespace plf;
using plftest::Rng;

namespace {

PLIntervalMap plateau() {
  // Up to a flat top at 3/4, then down to 0.
  return {{{0, 0}, {Rat(1, 4), Rat(3, 4)}, {Rat(1, 2), Rat(3, 4)}, {1, 0}}};
}

}  // namespace

TEST_CASE("interval map validity and evaluation") {
  PLIntervalMap id = plmap_identity();
  PLIntervalMap tent = plmap_tent();
  CHECK(plmap_valid(id));
  CHECK(plmap_valid(tent));
  CHECK(plmap_onto(id));
  CHECK(plmap_onto(tent));
  CHECK(tent.value_at(Rat(1, 4)) == Rat(1, 2));
  CHECK(tent.value_at(Rat(3, 4)) == Rat(1, 2));
  CHECK(tent.value_at(Rat(1, 2)) == 1);

  std::string why;
  CHECK(!plmap_valid({{{0, 0}}}, &why));
  CHECK(!why.empty());
  CHECK(!plmap_valid({{{Rat(1, 4), 0}, {1, 1}}}));          // domain
  CHECK(!plmap_valid({{{0, 0}, {1, Rat(3, 2)}}}));          // range
  CHECK(!plmap_valid({{{0, 0}, {Rat(1, 2), 1}, {Rat(1, 2), 0}, {1, 0}}}));
  CHECK(!plmap_onto({{{0, 0}, {1, Rat(1, 2)}}}));
  CHECK(!plmap_onto(plateau()));
}

TEST_CASE("composition is exact") {
  PLIntervalMap id = plmap_identity();
  PLIntervalMap tent = plmap_tent();
  CHECK(compose(id, tent) == tent);
  CHECK(compose(tent, id) == tent);

  PLIntervalMap w = compose(tent, tent);
  PLIntervalMap expect{{{0, 0},
                        {Rat(1, 4), 1},
                        {Rat(1, 2), 0},
                        {Rat(3, 4), 1},
                        {1, 0}}};
  CHECK(w == expect);

  // Pointwise agreement with f ∘ g on a grid, for random maps.
  Rng rng(7);
  for (int it = 0; it < 10; ++it) {
    PLIntervalMap f = plftest::random_plmap(rng);
    PLIntervalMap g = plftest::random_plmap(rng);
    PLIntervalMap h = compose(f, g);
    CHECK(plmap_valid(h));
    for (int k = 0; k <= 32; ++k) {
      Rat x(k, 32);
      CHECK(h.value_at(x) == f.value_at(g.value_at(x)));
    }
  }
}

TEST_CASE("the zigzag refinement") {
  PLIntervalMap r1 = crooked_refine(plmap_identity());
  PLIntervalMap expect{{{0, 0},
                        {Rat(1, 3), Rat(2, 3)},
                        {Rat(2, 3), Rat(1, 3)},
                        {1, 1}}};
  CHECK(r1 == expect);

  // Each round turns every monotone lap into three: 3, then 9 laps.
  PLIntervalMap r2 = crooked_refine(r1);
  CHECK(r2.bp.size() == 10);
  CHECK(plmap_valid(r2));
  CHECK(plmap_onto(r2));
  CHECK(r2.value_at(0) == 0);
  CHECK(r2.value_at(1) == 1);

  // A constant map is a single flat lap and survives unchanged; an
  // interior plateau is absorbed into its monotone lap and zigzagged.
  PLIntervalMap flat{{{0, Rat(1, 2)}, {1, Rat(1, 2)}}};
  CHECK(crooked_refine(flat) == flat);
  PLIntervalMap p = crooked_refine(plateau());
  CHECK(plmap_valid(p));
  CHECK(p.value_at(Rat(1, 4)) == Rat(3, 8));
}

TEST_CASE("critical values") {
  auto cv = critical_values(plmap_tent());
  CHECK(cv == std::vector<Rat>{0, 1});
  auto cr = critical_values(crooked_refine(plmap_identity()));
  CHECK(cr == std::vector<Rat>{0, Rat(1, 3), Rat(2, 3), 1});
  // A plateau is one extremum, not two.
  auto cp = critical_values(plateau());
  CHECK(cp == std::vector<Rat>{0, Rat(3, 4)});
}

TEST_CASE("level sets match the grid oracle") {
  auto lv = level_set(plmap_tent(), Rat(1, 2));
  REQUIRE(lv.size() == 2);
  CHECK(lv[0] == std::pair<Rat, Rat>{Rat(1, 4), Rat(1, 4)});
  CHECK(lv[1] == std::pair<Rat, Rat>{Rat(3, 4), Rat(3, 4)});

  auto pl = level_set(plateau(), Rat(3, 4));
  REQUIRE(pl.size() == 1);
  CHECK(pl[0] == std::pair<Rat, Rat>{Rat(1, 4), Rat(1, 2)});
  CHECK(level_set(plateau(), Rat(7, 8)).empty());

  Rng rng(11);
  for (int it = 0; it < 10; ++it) {
    PLIntervalMap g = plftest::random_plmap(rng);
    for (int k = 0; k <= 16; ++k) {
      Rat y(k, 16);
      CHECK(level_set(g, y) == plftest::oracle_level_set(g, y));
    }
  }
}

TEST_CASE("delta nets") {
  std::vector<Rat> net = {0, Rat(1, 2), 1};
  CHECK(is_delta_net(net, Rat(1, 4)));
  CHECK(!is_delta_net(net, Rat(1, 8)));
  CHECK(!is_delta_net({}, 1));
  CHECK(!is_delta_net({Rat(1, 2), 1}, Rat(1, 4)));  // front too far in
  CHECK(!is_delta_net({0, Rat(1, 2)}, Rat(1, 4)));  // back too far in
}

TEST_CASE("parallel and serial quadruple checkers agree") {
  Rng rng(13);
  for (int it = 0; it < 12; ++it) {
    PLIntervalMap g = it == 0 ? plmap_identity()
                    : it == 1 ? plmap_tent()
                              : plftest::random_plmap(rng);
    for (int denom : {4, 8}) {
      std::vector<Rat> net;
      for (int k = 0; k <= denom; ++k) net.emplace_back(k, denom);
      CrookedCounterexample c1, c2;
      bool p = net_passes(g, net, &c1);
      bool s = net_passes_serial(g, net, &c2);
      CHECK(p == s);
      CHECK(p == plftest::oracle_net_passes(g, net));
      if (!p) {
        // Any reported counterexample is a genuine monotone quadruple.
        for (const CrookedCounterexample& c : {c1, c2}) {
          bool inc = c.y1 < c.y2 && c.y2 < c.y3 && c.y3 < c.y4;
          bool dec = c.y1 > c.y2 && c.y2 > c.y3 && c.y3 > c.y4;
          CHECK((inc || dec));
          CHECK(c.x1 < c.x4);
          CHECK(g.value_at(c.x1) == c.y1);
          CHECK(g.value_at(c.x4) == c.y4);
        }
      }
    }
  }
}

TEST_CASE("crookedness verdicts on the basic maps") {
  // The identity admits no crooked detour at any useful scale.
  CrookedCounterexample cex;
  auto cid = is_delta_crooked(plmap_identity(), Rat(1, 8), &cex);
  REQUIRE(cid);
  CHECK(!cid->verified);
  CHECK(cex.x1 < cex.x4);

  // δ = 1 is vacuous: a two-point net has no monotone quadruple.
  auto cv = is_delta_crooked(plmap_identity(), 1);
  REQUIRE(cv);
  CHECK(cv->verified);
  CHECK(is_delta_net(cv->net, 1));

  // Non-onto maps are rejected up front.
  CHECK(!is_delta_crooked(plateau(), Rat(1, 2)));

  // Three refinement rounds certify δ = 1/3.
  PLIntervalMap r = plmap_identity();
  for (int i = 0; i < 3; ++i) r = crooked_refine(r);
  auto c3 = is_delta_crooked(r, Rat(1, 3));
  REQUIRE(c3);
  CHECK(c3->verified);
  CHECK(c3->delta == Rat(1, 3));
  CHECK(is_delta_net(c3->net, Rat(1, 3)));
  CHECK(net_passes_serial(r, c3->net));
}

TEST_CASE("crookedness agrees with the grid oracle on random maps") {
  Rng rng(29);
  int crooked = 0;
  for (int it = 0; it < 10; ++it) {
    PLIntervalMap g = plftest::random_plmap(rng);
    for (const Rat& delta : {Rat(1, 2), Rat(1, 4)}) {
      auto cert = is_delta_crooked(g, delta);
      REQUIRE(cert);
      CHECK(cert->verified == plftest::oracle_is_crooked(g, delta));
      if (cert->verified) ++crooked;
    }
  }
  // The sample is not one-sided.
  CHECK(crooked > 0);
  CHECK(crooked < 20);
}

TEST_CASE("inverse-limit chain condition") {
  // A single map needs only 1-crookedness: vacuous.
  auto r1 = chain_check({plmap_tent()});
  REQUIRE(r1);
  CHECK(r1->pass.size() == 1);
  CHECK(r1->all_pass());

  // Non-onto entries are a precondition failure.
  CHECK(!chain_check({plateau()}));

  // The corpus chain: report shape is triangular and each entry equals
  // a direct check of the composite.
  Document d = plftest::load_corpus("interval_maps.json");
  CHECK(d.kind == DocKind::IntervalMaps);
  REQUIRE(d.maps.size() == 5);
  CHECK(d.maps[0] == plmap_identity());
  CHECK(d.maps[1] == plmap_tent());
  CHECK(d.maps[2] == crooked_refine(plmap_identity()));
  CHECK(d.maps[4] == crooked_refine(crooked_refine(d.maps[2])));

  std::vector<PLIntervalMap> chain(d.maps.begin(), d.maps.begin() + 3);
  auto rep = chain_check(chain);
  REQUIRE(rep);
  REQUIRE(rep->pass.size() == 3);
  for (std::size_t n = 1; n <= 3; ++n) {
    REQUIRE(rep->pass[n - 1].size() == n);
    for (std::size_t k = 1; k <= n; ++k) {
      PLIntervalMap comp = chain[n - 1];
      for (std::size_t j = n - 1; j >= k; --j) comp = compose(chain[j - 1], comp);
      auto cert = is_delta_crooked(comp, Rat(1, (long)n));
      CHECK((bool)rep->pass[n - 1][k - 1] == (cert && cert->verified));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plf/unfold.hpp"

using namespace plf;

namespace {

// Canonical signature of a graph for equality checks across folds.
std::string graph_sig(const Graph& g) {
  Document d;
  d.kind = DocKind::Graph;
  d.graph = g;
  return serialize_document(d);
}

std::string broken_sig(const BrokenStairwell& b,
                       const std::optional<Rat>& radius) {
  Document d;
  d.kind = DocKind::BrokenStairwell;
  d.broken = b;
  d.tube_radius = radius;
  return serialize_document(d);
}

// Does (p, y) lie on one of the sheets?
bool on_some_sheet(const Graph& g, const std::vector<StraightSet>& sheets,
                   const CylPoint& q) {
  for (const StraightSet& s : sheets) {
    auto h = evaluate(g, s, q.p);
    if (h && *h == q.y) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("reduce_height matches the stored broken stairwell") {
  Document h5 = plftest::load_corpus("stairwell_h5.json");
  std::string why;
  auto b = reduce_height(h5.stairwell, &why);
  REQUIRE_MESSAGE(b, why);
  CHECK(validate_broken(*b, &why));
  CHECK(b->pit == 1);
  CHECK(b->stairs.height() == h5.stairwell.height() - 2);

  Document golden = plftest::load_corpus("unfold.json");
  CHECK(broken_sig(*b, golden.tube_radius) ==
        broken_sig(golden.broken, golden.tube_radius));

  // The pocket pair and γ are the bottom data of the input stairwell.
  CHECK(b->p1 == h5.stairwell.levels[0]);
  CHECK(b->p2 == h5.stairwell.levels[1]);
  CHECK(b->ends_p1 == h5.stairwell.betas[0]);
  CHECK(b->gamma == h5.stairwell.alphas[2]);
}

TEST_CASE("reduce_height needs height at least 3") {
  Document h1 = plftest::load_corpus("pipeline_h1.json");
  std::string why;
  CHECK(!reduce_height(h1.stairwell, &why));
  CHECK(!why.empty());

  Document h3 = plftest::load_corpus("pipeline_h3.json");
  auto b = reduce_height(h3.stairwell, &why);
  REQUIRE_MESSAGE(b, why);
  CHECK(b->stairs.height() == 1);
  CHECK(validate_broken(*b));
}

TEST_CASE("unfold_once golden step: pit moves from 1 to 2") {
  Document in = plftest::load_corpus("unfold.json");
  UnfoldOutcome oc = unfold_once(in.broken);
  REQUIRE_MESSAGE(oc.signal == UnfoldSignal::Step, oc.message);
  REQUIRE(oc.step);
  CHECK(!oc.step->finished);

  const SimpleFold& f = oc.step->fold;
  std::string why;
  CHECK_MESSAGE(validate_fold(f, &why), why);
  CHECK(f.F.connected());
  CHECK(graph_sig(f.G) == graph_sig(in.broken.stairs.g));

  const BrokenStairwell& next = oc.step->next;
  CHECK(next.pit == 2);
  CHECK(next.stairs.height() == in.broken.stairs.height());
  CHECK_MESSAGE(validate_broken(next, &why), why);

  Document golden = plftest::load_corpus("brokenstairwell.json");
  CHECK(broken_sig(next, golden.tube_radius) ==
        broken_sig(golden.broken, golden.tube_radius));

  // Every sampled point of the new sheets pushes down onto one of the
  // old sheets (levels or pocket pair) of the input.
  std::vector<StraightSet> old = in.broken.stairs.levels;
  old.push_back(in.broken.p1);
  old.push_back(in.broken.p2);
  std::vector<StraightSet> fresh = next.stairs.levels;
  fresh.push_back(next.p1);
  fresh.push_back(next.p2);
  for (const StraightSet& s : fresh)
    for (const CylPoint& q : sample_section(next.stairs.g, s, 24)) {
      CHECK(*evaluate(next.stairs.g, s, q.p) == q.y);
      CylPoint down{push_point(f, q.p), q.y};
      CHECK(on_some_sheet(f.G, old, down));
    }
}

TEST_CASE("unfolding continues until the pit passes the top") {
  Document d = plftest::load_corpus("brokenstairwell.json");
  int k = d.broken.stairs.height();
  REQUIRE(d.broken.pit == 2);

  UnfoldOutcome oc = unfold_once(d.broken);
  REQUIRE_MESSAGE(oc.signal == UnfoldSignal::Step, oc.message);
  REQUIRE(!oc.step->finished);
  CHECK(oc.step->next.pit == 3);
  CHECK(validate_broken(oc.step->next));

  UnfoldOutcome last = unfold_once(oc.step->next);
  REQUIRE_MESSAGE(last.signal == UnfoldSignal::Step, last.message);
  REQUIRE(last.step->finished);
  const Stairwell& sw = *last.step->finished;
  std::string why;
  CHECK_MESSAGE(validate_stairwell(sw, &why), why);
  CHECK(sw.height() == k);
  CHECK(separates_check(sw.g, sw.levels));
  CHECK(graph_sig(last.step->fold.F) == graph_sig(sw.g));
}

TEST_CASE("degenerate unfold signals") {
  Document d = plftest::load_corpus("unfold.json");

  // γ = ∅: the broken structure already is a plain stairwell.
  BrokenStairwell b = d.broken;
  b.gamma = CylPointSet{};
  UnfoldOutcome oc = unfold_once(b);
  CHECK(oc.signal == UnfoldSignal::AlreadyStairwell);
  REQUIRE(oc.done);
  CHECK(oc.done->height() == b.stairs.height());

  // E(P1) = ∅: the pocket sheet alone is a height-1 stairwell.
  BrokenStairwell b2 = d.broken;
  b2.ends_p1 = CylPointSet{};
  UnfoldOutcome oc2 = unfold_once(b2);
  CHECK(oc2.signal == UnfoldSignal::PitAlone);
  REQUIRE(oc2.done);
  CHECK(oc2.done->height() == 1);
  CHECK(oc2.done->levels[0] == d.broken.p1);
}

TEST_CASE("reduce_to_height_one on the pipeline corpus") {
  struct Want {
    const char* name;
    int bound;
  };
  for (const Want& w : {Want{"pipeline_h1.json", 0}, Want{"pipeline_h3.json", 2},
                        Want{"pipeline_h5.json", 6}}) {
    Document d = plftest::load_corpus(w.name);
    std::string why;
    auto rep = reduce_to_height_one(d.stairwell, &why);
    REQUIRE_MESSAGE(rep, w.name << ": " << why);
    CHECK(rep->fold_bound == w.bound);
    CHECK((int)rep->folds.size() <= rep->fold_bound);

    const Stairwell& res = rep->result;
    CHECK_MESSAGE(validate_stairwell(res, &why), why);
    CHECK(res.height() == 1);
    // A single level separating the cylinder covers the whole graph.
    CHECK(res.levels[0].base == make_full_set(res.g));
    CHECK(separates_check(res.g, res.levels));

    // The fold chain composes: each domain is the previous codomain,
    // the first fold lands on the original graph.
    if (!rep->folds.empty()) {
      CHECK(graph_sig(rep->folds.front().G) == graph_sig(d.stairwell.g));
      for (std::size_t i = 1; i < rep->folds.size(); ++i)
        CHECK(graph_sig(rep->folds[i].G) == graph_sig(rep->folds[i - 1].F));
      CHECK(graph_sig(rep->folds.back().F) == graph_sig(res.g));
    } else {
      CHECK(graph_sig(res.g) == graph_sig(d.stairwell.g));
    }

    // The section pushes down onto the original stairwell levels.
    for (const CylPoint& q : sample_section(res.g, res.levels[0], 40)) {
      CylPoint down = push_through(rep->folds, q);
      CHECK(on_some_sheet(d.stairwell.g, d.stairwell.levels, down));
    }
  }
}

TEST_CASE("push_through with an empty chain is the identity") {
  Graph g = make_arc();
  CylPoint p{GraphPoint::on_edge(g, 0, Rat(1, 3)), Rat(1, 2)};
  CHECK(push_through({}, p) == p);
}

TEST_CASE("sample_section spreads points over the sheet") {
  Graph g = make_arc();
  StraightSet s = make_constant_sheet(g, Rat(1, 2));
  auto pts = sample_section(g, s, 10);
  CHECK((int)pts.size() >= 10);
  for (const CylPoint& q : pts) CHECK(*evaluate(g, s, q.p) == q.y);
  CHECK(sample_section(g, s, 0).empty());

  Document d = plftest::load_corpus("straight.json");
  const StraightSet& sheet = d.stairwell.levels[0];
  for (const CylPoint& q : sample_section(d.stairwell.g, sheet, 16)) {
    CHECK(contains(d.stairwell.g, sheet.base, q.p));
    CHECK(*evaluate(d.stairwell.g, sheet, q.p) == q.y);
  }
}

#include "plf/examples.hpp"

#include "plf/unfold.hpp"

namespace plf {

namespace {

Seg mk(int edge, Rat t1, Rat y1, Rat t2, Rat y2) {
  if (t1 < t2) return {edge, t1, y1, t2, y2};
  return {edge, t2, y2, t1, y1};
}

}  // namespace

std::vector<Seg> snake_arc_segments(int k) {
  std::vector<Rat> xs(k + 1), ys(k + 1);
  for (int j = 0; j <= k; ++j) {
    ys[j] = Rat(2 * j + 1, 2 * k + 2);
    if (j == 0)
      xs[j] = 0;
    else if (j == k)
      xs[j] = 1;
    else if (j % 2 == 1)
      xs[j] = Rat(2, 3) + Rat(j, 100);
    else
      xs[j] = Rat(1, 3) - Rat(j, 100);
  }
  std::vector<Seg> out;
  for (int j = 0; j < k; ++j)
    out.push_back(mk(0, xs[j], ys[j], xs[j + 1], ys[j + 1]));
  return out;
}

std::vector<Seg> snake_triod_segments() {
  std::vector<Seg> out;
  out.push_back(mk(1, 0, Rat(1, 2), 1, Rat(1, 2)));
  out.push_back(mk(2, 0, Rat(1, 2), 1, Rat(1, 2)));
  out.push_back(mk(0, 0, Rat(1, 2), Rat(5, 8), Rat(3, 4)));
  out.push_back(mk(0, Rat(5, 8), Rat(3, 4), Rat(3, 8), Rat(1, 4)));
  out.push_back(mk(0, Rat(3, 8), Rat(1, 4), 1, Rat(1, 2)));
  return out;
}

Document example_simple_fold_arc() {
  Graph g = make_arc();
  ClosedSet a = make_set(g, {{0, {Rat(1, 4), Rat(1, 2)}}});
  FinitePointSet b1, b2;
  b1.insert(GraphPoint::on_edge(g, 0, Rat(1, 4)));
  b2.insert(GraphPoint::on_edge(g, 0, Rat(1, 2)));
  auto f = fold_from_pocket(g, a, b1, b2);
  Document d;
  d.kind = DocKind::FoldSequence;
  d.folds = {*f};
  return d;
}

Document example_simple_fold_triod() {
  Graph g = make_triod();
  ClosedSet a = make_set(g, {{0, {Rat(1, 4), Rat(1, 2)}}});
  FinitePointSet b1, b2;
  b1.insert(GraphPoint::on_edge(g, 0, Rat(1, 4)));
  b2.insert(GraphPoint::on_edge(g, 0, Rat(1, 2)));
  auto f = fold_from_pocket(g, a, b1, b2);
  Document d;
  d.kind = DocKind::FoldSequence;
  d.folds = {*f};
  return d;
}

Document example_straight_partial() {
  Graph g = make_arc();
  SheetPiece p;
  p.edge = 0;
  p.bp = {{Rat(1, 4), Rat(1, 3)},
          {Rat(1, 2), Rat(2, 3)},
          {Rat(3, 4), Rat(1, 3)}};
  Stairwell sw;
  sw.g = g;
  sw.levels = {*assemble_level(g, {p})};
  sw.alphas = {{}};
  sw.betas = {{}};
  Document d;
  d.kind = DocKind::Stairwell;
  d.stairwell = sw;
  d.partial = true;
  return d;
}

Document example_separator_arc(int k) {
  Document d;
  d.kind = DocKind::Separator;
  d.graph = make_arc();
  d.segments = snake_arc_segments(k);
  return d;
}

Document example_separator_triod() {
  Document d;
  d.kind = DocKind::Separator;
  d.graph = make_triod();
  d.segments = snake_triod_segments();
  return d;
}

Document example_interval_maps() {
  Document d;
  d.kind = DocKind::IntervalMaps;
  PLIntervalMap r = plmap_identity();
  d.maps = {plmap_identity(), plmap_tent()};
  for (int i = 0; i < 3; ++i) {
    r = crooked_refine(r);
    d.maps.push_back(r);
  }
  return d;
}

std::optional<Document> example_stairwell(int k, const Rat& radius,
                                          std::string* why) {
  auto sw = from_separator(make_arc(), snake_arc_segments(k), radius, why);
  if (!sw) return std::nullopt;
  Document d;
  d.kind = DocKind::Stairwell;
  d.stairwell = *sw;
  d.tube_radius = radius;
  return d;
}

std::optional<Document> example_unfold_input(std::string* why) {
  auto st = example_stairwell(5, Rat(1, 16), why);
  if (!st) return std::nullopt;
  auto b = reduce_height(st->stairwell, why);
  if (!b) return std::nullopt;
  Document d;
  d.kind = DocKind::BrokenStairwell;
  d.broken = *b;
  d.tube_radius = Rat(1, 16);
  return d;
}

std::optional<Document> example_broken_pit2(std::string* why) {
  auto in = example_unfold_input(why);
  if (!in) return std::nullopt;
  UnfoldOutcome oc = unfold_once(in->broken);
  if (oc.signal != UnfoldSignal::Step || oc.step->finished) {
    if (why) *why = "unfold step did not yield a broken stairwell: " + oc.message;
    return std::nullopt;
  }
  Document d;
  d.kind = DocKind::BrokenStairwell;
  d.broken = oc.step->next;
  return d;
}

std::optional<std::vector<std::pair<std::string, Document>>> build_corpus(
    std::string* why) {
  std::vector<std::pair<std::string, Document>> out;
  out.push_back({"simple_fold_arc.json", example_simple_fold_arc()});
  out.push_back({"simple_fold_triod.json", example_simple_fold_triod()});
  out.push_back({"straight.json", example_straight_partial()});
  out.push_back({"make_stairwell.json", example_separator_arc(3)});
  out.push_back({"non_simple.json", example_separator_triod()});
  out.push_back({"interval_maps.json", example_interval_maps()});
  auto h5 = example_stairwell(5, Rat(1, 16), why);
  if (!h5) return std::nullopt;
  out.push_back({"stairwell_h5.json", *h5});
  for (int k : {1, 3, 5, 7}) {
    auto d = example_stairwell(k, Rat(1, 16), why);
    if (!d) return std::nullopt;
    out.push_back({"pipeline_h" + std::to_string(k) + ".json", *d});
  }
  auto un = example_unfold_input(why);
  if (!un) return std::nullopt;
  out.push_back({"unfold.json", *un});
  auto b2 = example_broken_pit2(why);
  if (!b2) return std::nullopt;
  out.push_back({"brokenstairwell.json", *b2});
  return out;
}

}  // namespace plf

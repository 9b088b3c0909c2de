#include "plf/unfold.hpp"

#include <algorithm>
#include <string>

namespace plf {

std::optional<BrokenStairwell> reduce_height(const Stairwell& sw,
                                             std::string* why) {
  int k = sw.height();
  if (k < 3) {
    if (why) *why = "height must be at least 3";
    return std::nullopt;
  }
  BrokenStairwell b;
  b.stairs.g = sw.g;
  for (int i = 2; i < k; ++i) {
    b.stairs.levels.push_back(sw.levels[i]);
    b.stairs.alphas.push_back(sw.alphas[i]);
    b.stairs.betas.push_back(sw.betas[i]);
  }
  b.stairs.alphas[0] = {};  // the old α_3 becomes γ
  b.pit = 1;
  b.p1 = sw.levels[0];
  b.p2 = sw.levels[1];
  b.ends_p1 = sw.betas[0];
  b.gamma = sw.alphas[2];
  std::string sv;
  if (!validate_broken(b, &sv)) {
    if (why) *why = "height reduction produced an invalid structure: " + sv;
    return std::nullopt;
  }
  return b;
}

UnfoldOutcome unfold_once(const BrokenStairwell& b) {
  UnfoldOutcome out;
  auto err = [&](const std::string& m) {
    out.signal = UnfoldSignal::Error;
    out.message = m;
    return out;
  };
  const Graph& g = b.stairs.g;
  if (!g.connected()) return err("graph not connected");
  int k = b.stairs.height();
  int i0 = b.pit - 1;
  if (b.gamma.empty()) {
    out.signal = UnfoldSignal::AlreadyStairwell;
    out.done = b.stairs;
    return out;
  }
  if (b.ends_p1.empty()) {
    Stairwell s;
    s.g = g;
    s.levels = {b.p1};
    s.alphas = {{}};
    s.betas = {{}};
    out.signal = UnfoldSignal::PitAlone;
    out.done = s;
    return out;
  }
  const StraightSet& s0 = b.stairs.levels[i0];
  ClosedSet G1 = b.p1.base;
  ClosedSet G2 = b.p2.base;
  ClosedSet G3 = side_of(g, s0.base, b.gamma.project());
  if (!(G1 == side_of(g, G2, b.ends_p1.project())))
    return err("σ identity fails: π(P1) != σ_{π(E(P1))}(π(P2))");
  if (!(G3 == side_of(g, G2, b.gamma.project())))
    return err("σ identity fails: σ_{π(γ)}(π(S_pit)) != σ_{π(γ)}(π(P2))");
  std::string why;
  auto fo = build_fold(g, G1, G2, G3, &why);
  if (!fo) return err("fold construction failed: " + why);
  const SimpleFold& f = *fo;
  if (!validate_fold(f, &why)) return err("fold invalid: " + why);

  auto in_set = [&](const CylPointSet& s, const ClosedSet& c) {
    CylPointSet r;
    for (const CylPoint& p : s.pts)
      if (contains(f.F, c, p.p)) r.insert(p);
    return r;
  };
  ClosedSet F12 = part_union(f, {1, 2});

  // Primed sheets over the full quotient graph.
  std::vector<StraightSet> lv(k);
  std::vector<CylPointSet> al(k), be(k);
  for (int i = 0; i < k; ++i) {
    if (i == i0 || i == i0 + 1) continue;
    lv[i] = pullback_straight(f, b.stairs.levels[i]);
    al[i] = preimage_cyl(f, b.stairs.alphas[i]);
    be[i] = preimage_cyl(f, b.stairs.betas[i]);
  }
  // The pit level is reassembled from P1 over part 1, P2 over part 2
  // and S_pit over part 3.
  auto q1 = pullback_in_parts(f, b.p1, {1});
  auto q2 = pullback_in_parts(f, b.p2, {2});
  auto q3 = pullback_in_parts(f, s0, {3});
  if (!q1 || !q2 || !q3) return err("pit pullback has an irregular base");
  auto u = union_straight(f.F, {*q1, *q2, *q3});
  if (!u) return err("pit sheets do not assemble into a straight set");
  lv[i0] = *u;
  al[i0] = preimage_cyl(f, b.stairs.alphas[i0]);
  be[i0] = in_set(preimage_cyl(f, b.stairs.betas[i0]), f.F3);

  bool top = (i0 + 1 == k);
  StraightSet np1, np2;
  CylPointSet ngamma, nends;
  if (!top) {
    lv[i0 + 1] = pullback_straight(f, b.stairs.levels[i0 + 1]);
    al[i0 + 1] = in_set(preimage_cyl(f, b.stairs.alphas[i0 + 1]), f.F3);
    be[i0 + 1] = preimage_cyl(f, b.stairs.betas[i0 + 1]);
    ngamma = in_set(preimage_cyl(f, b.stairs.alphas[i0 + 1]), F12);
    auto r1 = pullback_in_parts(f, b.p2, {1, 2});
    auto r2 = pullback_in_parts(f, s0, {1, 2});
    if (!r1 || !r2) return err("pocket pullback has an irregular base");
    np1 = *r1;
    np2 = *r2;
    nends = preimage_cyl(f, b.gamma);
  }

  // Restrict to the component of the quotient that carries a pocket
  // component joining E(P1) to γ.
  ClosedSet ksel;
  bool found = false;
  for (const ClosedSet& comp : components(g, G2)) {
    bool m1 = false, m2 = false;
    for (const GraphPoint& q : b.ends_p1.project().pts)
      if (contains(g, comp, q)) m1 = true;
    for (const GraphPoint& q : b.gamma.project().pts)
      if (contains(g, comp, q)) m2 = true;
    if (m1 && m2) {
      ksel = comp;
      found = true;
      break;
    }
  }
  if (!found) return err("no pocket component joins E(P1) to γ");
  GraphPoint kp;
  found = false;
  for (std::size_t e = 0; e < g.edges.size() && !found; ++e)
    if (!ksel.iv[e].empty()) {
      kp = GraphPoint::on_edge(
          g, (int)e, Rat((ksel.iv[e][0].a + ksel.iv[e][0].b) / 2));
      found = true;
    }
  if (!found) return err("degenerate pocket component");
  FinitePointSet kset;
  kset.insert(kp);
  GraphPoint fkp;
  found = false;
  for (const GraphPoint& q : preimage_points(f, kset).pts)
    if (contains(f.F, f.F2, q)) {
      fkp = q;
      found = true;
    }
  if (!found) return err("pocket point has no copy over the middle part");
  ClosedSet comp_f;
  found = false;
  for (const ClosedSet& c : fold_components(f))
    if (contains(f.F, c, fkp)) {
      comp_f = c;
      found = true;
      break;
    }
  if (!found) return err("quotient component lookup failed");
  auto red = reduce_to_component(f, comp_f, &why);
  if (!red) return err("component reduction failed: " + why);

  UnfoldStep st;
  st.fold = red->fold;
  Stairwell ns;
  ns.g = red->fold.F;
  for (int i = 0; i < k; ++i) {
    ns.levels.push_back(transport_straight(*red, f.F, lv[i]));
    ns.alphas.push_back(transport_cyl(*red, f.F, al[i]));
    ns.betas.push_back(transport_cyl(*red, f.F, be[i]));
  }
  std::string sv;
  if (top) {
    if (!validate_stairwell(ns, &sv))
      return err("unfolded stairwell invalid: " + sv);
    if (!separates_check(ns.g, ns.levels))
      return err("unfolded stairwell does not separate");
    st.finished = std::move(ns);
  } else {
    BrokenStairwell nb;
    nb.stairs = std::move(ns);
    nb.pit = b.pit + 1;
    nb.p1 = transport_straight(*red, f.F, np1);
    nb.p2 = transport_straight(*red, f.F, np2);
    nb.gamma = transport_cyl(*red, f.F, ngamma);
    nb.ends_p1 = transport_cyl(*red, f.F, nends);
    if (!validate_broken(nb, &sv))
      return err("unfolded broken stairwell invalid: " + sv);
    st.next = std::move(nb);
  }
  out.signal = UnfoldSignal::Step;
  out.step = std::move(st);
  return out;
}

std::optional<LiftReport> reduce_to_height_one(const Stairwell& sw,
                                               std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return std::optional<LiftReport>();
  };
  std::string sv;
  if (!validate_stairwell(sw, &sv))
    return fail("input stairwell invalid: " + sv);
  LiftReport rep;
  for (int h = sw.height(); h >= 3; h -= 2) rep.fold_bound += h - 1;
  Stairwell cur = sw;
  while (cur.height() > 1) {
    if (cur.height() == 2) return fail("height 2 cannot be reduced");
    auto b = reduce_height(cur, &sv);
    if (!b) return fail(sv);
    rep.trace.push_back("reduce: height " + std::to_string(cur.height()) +
                        " -> broken height " +
                        std::to_string(b->stairs.height()));
    bool inner = true;
    while (inner) {
      UnfoldOutcome oc = unfold_once(*b);
      switch (oc.signal) {
        case UnfoldSignal::Step:
          rep.folds.push_back(oc.step->fold);
          rep.trace.push_back("unfold at pit " + std::to_string(b->pit));
          if (oc.step->finished) {
            cur = *oc.step->finished;
            inner = false;
          } else {
            *b = std::move(oc.step->next);
          }
          break;
        case UnfoldSignal::AlreadyStairwell:
          rep.trace.push_back("γ empty: continuing with a plain stairwell");
          cur = *oc.done;
          inner = false;
          break;
        case UnfoldSignal::PitAlone:
          rep.trace.push_back("E(P1) empty: pocket is a height-1 stairwell");
          cur = *oc.done;
          inner = false;
          break;
        case UnfoldSignal::Error:
          return fail("unfold failed: " + oc.message);
      }
      if ((int)rep.folds.size() > rep.fold_bound)
        return fail("fold bound exceeded");
    }
  }
  rep.result = std::move(cur);
  return rep;
}

CylPoint push_through(const std::vector<SimpleFold>& folds, const CylPoint& p) {
  CylPoint q = p;
  for (auto it = folds.rbegin(); it != folds.rend(); ++it)
    q.p = push_point(*it, q.p);
  return q;
}

std::vector<CylPoint> sample_section(const Graph& g, const StraightSet& s,
                                     int n) {
  std::vector<const SheetPiece*> ps;
  for (const auto& per_edge : s.pieces)
    for (const SheetPiece& p : per_edge) ps.push_back(&p);
  std::vector<CylPoint> out;
  if (ps.empty() || n <= 0) return out;
  int per = std::max(1, (int)(n / ps.size()));
  for (const SheetPiece* p : ps) {
    for (int i = 0; i <= per; ++i) {
      Rat t = p->t_min() + (p->t_max() - p->t_min()) * Rat(i) / Rat(per + 1);
      out.push_back({GraphPoint::on_edge(g, p->edge, t), p->value_at(t)});
    }
  }
  return out;
}

}  // namespace plf

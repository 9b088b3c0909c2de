#include "plf/stairwell.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace plf {

// ── validation ──────────────────────────────────────────────────────

namespace {

bool validate_levels(const Stairwell& sw, const CylPointSet* extra_at,
                     int extra_level, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const Graph& g = sw.g;
  int k = sw.height();
  if (k < 1) return fail("height must be at least 1");
  if ((int)sw.alphas.size() != k || (int)sw.betas.size() != k)
    return fail("alpha/beta tables must match the height");
  std::string sv;
  for (int i = 0; i < k; ++i) {
    if (sw.levels[i].empty())
      return fail("S1: level " + std::to_string(i + 1) + " is empty");
    if (!straight_valid(g, sw.levels[i], &sv))
      return fail("S1: level " + std::to_string(i + 1) + " not straight: " +
                  sv);
  }
  // (S2)
  if (!sw.alphas[0].empty()) return fail("S2: α_1 must be empty");
  if (!sw.betas[k - 1].empty()) return fail("S2: β_k must be empty");
  for (int i = 0; i + 1 < k; ++i)
    if (!(sw.betas[i] == sw.alphas[i + 1]))
      return fail("S2: β_" + std::to_string(i + 1) + " != α_" +
                  std::to_string(i + 2));
  for (int i = 0; i < k; ++i) {
    if (!cps_disjoint(sw.alphas[i], sw.betas[i]))
      return fail("S2: α and β overlap at level " + std::to_string(i + 1));
    CylPointSet want = cps_union(sw.alphas[i], sw.betas[i]);
    if (extra_at && i == extra_level) {
      if (!cps_disjoint(want, *extra_at))
        return fail("S2: γ overlaps α ∪ β at the pit");
      want = cps_union(want, *extra_at);
    }
    if (!(end_set(g, sw.levels[i]) == want))
      return fail("S2: end set of level " + std::to_string(i + 1) +
                  " differs from its markers");
  }
  // (S3)
  for (int i = 0; i + 1 < k; ++i)
    if (!agreement_radius(g, sw.levels[i].base, sw.levels[i + 1].base,
                          sw.betas[i].project()))
      return fail("S3: bases of levels " + std::to_string(i + 1) + "," +
                  std::to_string(i + 2) + " do not agree near π(β)");
  // (S4)
  for (int i = 0; i < k; ++i) {
    auto ca = has_consistent_complement(g, sw.levels[i].base,
                                        sw.alphas[i].project());
    auto cb = has_consistent_complement(g, sw.levels[i].base,
                                        sw.betas[i].project());
    if (!ca || !*ca || !cb || !*cb)
      return fail("S4: level " + std::to_string(i + 1) +
                  " not consistent rel its markers");
  }
  // (S5)
  std::vector<FinitePointSet> fam;
  for (int i = 1; i < k; ++i) fam.push_back(sw.alphas[i].project());
  if (extra_at) fam.push_back(extra_at->project());
  if (!is_generic(g, fam)) return fail("S5: marker family not generic");
  return true;
}

}  // namespace

bool validate_stairwell(const Stairwell& sw, std::string* why) {
  return validate_levels(sw, nullptr, -1, why);
}

bool validate_broken(const BrokenStairwell& b, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const Graph& g = b.stairs.g;
  int k = b.stairs.height();
  if (b.pit < 1 || b.pit > k) return fail("pit out of range");
  int i0 = b.pit - 1;
  if (!validate_levels(b.stairs, &b.gamma, i0, why)) return false;
  const StraightSet& s0 = b.stairs.levels[i0];
  std::string sv;
  if (!straight_valid(g, b.p1, &sv)) return fail("P1 not straight: " + sv);
  if (!straight_valid(g, b.p2, &sv)) return fail("P2 not straight: " + sv);
  if (b.p1.empty() || b.p2.empty()) return fail("P1 and P2 must be non-empty");
  if (!(end_set(g, b.p1) == b.ends_p1))
    return fail("E(P1) differs from its marker");
  if (!cps_disjoint(b.ends_p1, b.gamma))
    return fail("E(P1) and γ must be disjoint");
  if (!(end_set(g, b.p2) == cps_union(b.ends_p1, b.gamma)))
    return fail("E(P2) != E(P1) ⊔ γ");
  if (!agreement_radius(g, b.p1.base, b.p2.base, b.ends_p1.project()))
    return fail("π(P1), π(P2) do not agree near π(E(P1))");
  if (!agreement_radius(g, b.p2.base, s0.base, b.gamma.project()))
    return fail("π(P2), π(S_pit) do not agree near π(γ)");
  auto cg = has_consistent_complement(g, s0.base, b.gamma.project());
  if (!cg || !*cg) return fail("π(S_pit) not consistent rel π(γ)");
  auto c1 = has_consistent_complement(g, b.p2.base, b.ends_p1.project());
  auto c2 = has_consistent_complement(g, b.p2.base, b.gamma.project());
  if (!c1 || !*c1 || !c2 || !*c2)
    return fail("π(P2) not consistent rel its end sets");
  // Extended genericity.
  std::vector<FinitePointSet> fam;
  for (int i = 1; i < k; ++i) fam.push_back(b.stairs.alphas[i].project());
  fam.push_back(b.gamma.project());
  fam.push_back(b.ends_p1.project());
  if (!is_generic(g, fam)) return fail("extended marker family not generic");
  // (S6')
  ClosedSet pu = set_union(g, b.p1.base, b.p2.base);
  for (const GraphPoint& x : b.stairs.alphas[i0].project().pts)
    if (contains(g, pu, x)) return fail("S6': π(α_pit) meets π(P1 ∪ P2)");
  return true;
}

// ── conversions ─────────────────────────────────────────────────────

std::vector<Seg> to_segments(const Graph& g,
                             const std::vector<StraightSet>& sheets) {
  (void)g;
  std::vector<Seg> out;
  for (const StraightSet& s : sheets)
    for (const auto& per_edge : s.pieces)
      for (const SheetPiece& p : per_edge)
        for (std::size_t i = 0; i + 1 < p.bp.size(); ++i)
          out.push_back({p.edge, p.bp[i].first, p.bp[i].second,
                         p.bp[i + 1].first, p.bp[i + 1].second});
  return out;
}

bool separates_check(const Graph& g, const std::vector<StraightSet>& sheets) {
  return label_faces(g, to_segments(g, sheets)).separates;
}

std::optional<StraightSet> assemble_level(const Graph& g,
                                          std::vector<SheetPiece> pieces) {
  StraightSet out;
  out.base = make_empty_set(g);
  out.pieces.resize(g.edges.size());
  std::vector<std::vector<SheetPiece>> by_edge(g.edges.size());
  for (SheetPiece& p : pieces) {
    if (p.edge < 0 || p.edge >= (int)g.edges.size()) return std::nullopt;
    by_edge[p.edge].push_back(std::move(p));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto& v = by_edge[e];
    std::sort(v.begin(), v.end(), [](const SheetPiece& a, const SheetPiece& b) {
      return a.t_min() < b.t_min();
    });
    for (SheetPiece& p : v) {
      auto& dst = out.pieces[e];
      if (!dst.empty() && dst.back().t_max() == p.t_min() &&
          dst.back().bp.back().second == p.bp.front().second) {
        dst.back().bp.insert(dst.back().bp.end(), p.bp.begin() + 1,
                             p.bp.end());
      } else {
        if (!dst.empty() && dst.back().t_max() >= p.t_min())
          return std::nullopt;  // overlapping or touching with mismatch
        dst.push_back(std::move(p));
      }
    }
    for (SheetPiece& p : out.pieces[e]) {
      canonicalize_piece(p);
      out.base.iv[e].push_back({p.t_min(), p.t_max()});
    }
  }
  normalize(g, out.base);
  // normalize must not have merged intervals (pieces are separated).
  if (!straight_valid(g, out)) return std::nullopt;
  return out;
}

// ── stairwell extraction ────────────────────────────────────────────

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

using Pt = std::pair<Rat, Rat>;

// Group arc-local segments into connected components via shared
// endpoints.
std::vector<std::vector<int>> seg_components(const std::vector<Seg>& v) {
  std::map<Pt, std::vector<int>> at;
  for (std::size_t i = 0; i < v.size(); ++i) {
    at[{v[i].t1, v[i].y1}].push_back((int)i);
    at[{v[i].t2, v[i].y2}].push_back((int)i);
  }
  Dsu dsu((int)v.size());
  for (const auto& [p, ids] : at)
    for (std::size_t i = 1; i < ids.size(); ++i) dsu.unite(ids[0], ids[i]);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < v.size(); ++i)
    groups[dsu.find((int)i)].push_back((int)i);
  std::vector<std::vector<int>> out;
  for (auto& [r, ids] : groups) out.push_back(std::move(ids));
  return out;
}

// A turning-point-free component spanning [a,b] as a height function.
std::optional<SheetPiece> chain_to_piece(const std::vector<Seg>& segs,
                                         const std::vector<int>& comp) {
  std::vector<Seg> v;
  for (int i : comp) v.push_back(segs[i]);
  std::sort(v.begin(), v.end(),
            [](const Seg& a, const Seg& b) { return a.t1 < b.t1; });
  SheetPiece p;
  p.edge = v.front().edge;
  p.bp.push_back({v.front().t1, v.front().y1});
  for (const Seg& s : v) {
    if (!(s.t1 == p.bp.back().first && s.y1 == p.bp.back().second))
      return std::nullopt;
    p.bp.push_back({s.t2, s.y2});
  }
  canonicalize_piece(p);
  return p;
}

struct ArcOut {
  // level (1-based) -> sheet pieces contributed by this arc
  std::map<int, std::vector<SheetPiece>> level_pieces;
  // lower level i of each junction point (contributes to β_i)
  std::vector<std::pair<int, CylPoint>> beta_pts;
};

Seg mirror_seg(const Seg& s, const Rat& a, const Rat& b) {
  return {s.edge, a + b - s.t2, s.y2, a + b - s.t1, s.y1};
}

SheetPiece mirror_piece(const SheetPiece& p, const Rat& a, const Rat& b) {
  SheetPiece out;
  out.edge = p.edge;
  for (auto it = p.bp.rbegin(); it != p.bp.rend(); ++it)
    out.bp.push_back({a + b - it->first, it->second});
  return out;
}

// Process one arc assuming any wedge opens toward a (two points on
// the a-fiber).  `base_rank` is the level of the lowest component.
std::optional<ArcOut> process_arc(const Graph& g, int edge,
                                  const std::vector<Seg>& segs_arc,
                                  const Rat& a, const Rat& b,
                                  const Rat& tube_radius) {
  ArcOut out;
  auto comps = seg_components(segs_arc);
  // Rank components by their height(s) on the a-fiber.
  struct Comp {
    std::vector<int> ids;
    std::vector<Rat> ys_a, ys_b;  // heights on the two end fibers
  };
  std::vector<Comp> cs;
  for (auto& ids : comps) {
    Comp c;
    c.ids = std::move(ids);
    for (int i : c.ids) {
      const Seg& s = segs_arc[i];
      if (s.t1 == a) c.ys_a.push_back(s.y1);
      if (s.t2 == b) c.ys_b.push_back(s.y2);
    }
    for (auto* v : {&c.ys_a, &c.ys_b}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    if (c.ys_a.empty()) return std::nullopt;  // floating component
    cs.push_back(std::move(c));
  }
  std::sort(cs.begin(), cs.end(),
            [](const Comp& x, const Comp& y) { return x.ys_a[0] < y.ys_a[0]; });
  int j = 0;  // fiber count over a
  int wedge = -1;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].ys_a.size() == 2) {
      if (wedge >= 0) return std::nullopt;  // at most one wedge per arc
      wedge = (int)i;
    } else if (cs[i].ys_a.size() != 1) {
      return std::nullopt;
    }
    j += (int)cs[i].ys_a.size();
  }
  // Rank of the lowest strand of component i on the a-fiber.
  auto rank_of = [&](std::size_t i) {
    int r = 1;
    for (std::size_t l = 0; l < i; ++l) r += (int)cs[l].ys_a.size();
    return r;
  };

  if (wedge < 0) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].ys_b.size() != 1) return std::nullopt;
      auto p = chain_to_piece(segs_arc, cs[i].ids);
      if (!p) return std::nullopt;
      out.level_pieces[rank_of(i)].push_back(std::move(*p));
    }
    return out;
  }

  int m = rank_of(wedge);  // wedge occupies levels m, m+1
  // Split the wedge at its tip into two monotone branches.
  const Comp& W = cs[wedge];
  Rat tw = a;
  Rat yw;
  for (int i : W.ids)
    if (segs_arc[i].t2 > tw) {
      tw = segs_arc[i].t2;
      yw = segs_arc[i].y2;
    }
  if (!W.ys_b.empty()) return std::nullopt;  // must open toward a
  std::vector<int> low, high;
  {
    // Two chains from the a-fiber to the tip.
    std::map<Pt, std::vector<int>> at;
    for (int i : W.ids) {
      at[{segs_arc[i].t1, segs_arc[i].y1}].push_back(i);
      at[{segs_arc[i].t2, segs_arc[i].y2}].push_back(i);
    }
    for (int br = 0; br < 2; ++br) {
      Pt cur = {a, W.ys_a[br]};
      std::vector<int>& chain = br == 0 ? low : high;
      std::vector<char> used(segs_arc.size(), 0);
      for (const auto& c : low) used[c] = 1;
      while (!(cur == Pt{tw, yw})) {
        int nxt = -1;
        for (int i : at[cur])
          if (!used[i] && std::find(chain.begin(), chain.end(), i) ==
                              chain.end())
            nxt = i;
        if (nxt < 0) return std::nullopt;
        chain.push_back(nxt);
        const Seg& s = segs_arc[nxt];
        cur = (Pt{s.t1, s.y1} == cur) ? Pt{s.t2, s.y2} : Pt{s.t1, s.y1};
      }
    }
  }
  auto pl = chain_to_piece(segs_arc, low);
  auto ph = chain_to_piece(segs_arc, high);
  if (!pl || !ph) return std::nullopt;
  out.level_pieces[m].push_back(std::move(*pl));
  out.level_pieces[m + 1].push_back(std::move(*ph));
  out.beta_pts.push_back({m, {GraphPoint::on_edge(g, edge, tw), yw}});

  // Spanning components below the wedge keep their rank.
  std::vector<SheetPiece> spans(cs.size());
  Rat c_last = tw;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if ((int)i == wedge) continue;
    if (cs[i].ys_b.size() != 1) return std::nullopt;
    auto p = chain_to_piece(segs_arc, cs[i].ids);
    if (!p) return std::nullopt;
    for (const auto& bp : p->bp)
      if (bp.first < b && bp.first > c_last) c_last = bp.first;
    spans[i] = std::move(*p);
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if ((int)i == wedge) continue;
    int r = rank_of(i);
    if (r < m) {
      out.level_pieces[r].push_back(spans[i]);
      continue;
    }
    if (r < m + 2) return std::nullopt;  // strand inside the wedge mouth
  }
  // Zig-zags for levels m+2..j over slots in (c_last, b) where every
  // spanning component is linear.
  int q = j - (m + 1);
  if (q == 0) return out;
  // Safe vertical offset: a quarter of the smallest gap between
  // consecutive strands (and the floor/ceiling) over [c_last, b].
  Rat gap = 1;
  for (const Rat& t : {c_last, b}) {
    std::vector<Rat> hs;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if ((int)i != wedge) hs.push_back(spans[i].value_at(t));
    std::sort(hs.begin(), hs.end());
    if (hs.empty()) return std::nullopt;
    gap = rat_min(gap, hs.front());
    gap = rat_min(gap, Rat(1 - hs.back()));
    for (std::size_t i = 0; i + 1 < hs.size(); ++i)
      gap = rat_min(gap, Rat(hs[i + 1] - hs[i]));
  }
  Rat delta = rat_min(Rat(tube_radius / 2), Rat(gap / 4));
  if (delta <= 0) return std::nullopt;
  Rat width = b - c_last;
  int s = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if ((int)i == wedge || rank_of(i) < m) continue;
    int lev = rank_of(i);  // lev >= m+2
    Rat u = c_last + width * Rat(3 * s + 1) / Rat(3 * q + 1);
    Rat v = c_last + width * Rat(3 * s + 2) / Rat(3 * q + 1);
    ++s;
    const SheetPiece& h = spans[i];
    Rat hu = h.value_at(u), hv = h.value_at(v);
    // Level lev: h on [a,u], then up to (v, hv + δ).
    SheetPiece c1 = piece_segment(h, h.t_min(), u);
    c1.bp.push_back({v, hv + delta});
    // Level lev-1: the crossing diagonal.
    SheetPiece c2;
    c2.edge = h.edge;
    c2.bp = {{u, hu - delta}, {v, hv + delta}};
    // Level lev-2: from (u, hu - δ) down to h at v, then h to b.
    SheetPiece c3;
    c3.edge = h.edge;
    c3.bp = {{u, hu - delta}, {v, hv}};
    SheetPiece tail = piece_segment(h, v, h.t_max());
    c3.bp.insert(c3.bp.end(), tail.bp.begin() + 1, tail.bp.end());
    out.level_pieces[lev].push_back(std::move(c1));
    out.level_pieces[lev - 1].push_back(std::move(c2));
    out.level_pieces[lev - 2].push_back(std::move(c3));
    out.beta_pts.push_back(
        {lev - 1, {GraphPoint::on_edge(g, h.edge, v), Rat(hv + delta)}});
    out.beta_pts.push_back(
        {lev - 2, {GraphPoint::on_edge(g, h.edge, u), Rat(hu - delta)}});
  }
  return out;
}

}  // namespace

std::optional<Stairwell> from_separator(const Graph& g,
                                        const std::vector<Seg>& segs,
                                        const Rat& tube_radius,
                                        std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return std::optional<Stairwell>();
  };
  std::string sv;
  if (!arrangement_valid(g, segs, &sv)) return fail("invalid input: " + sv);
  if (!label_faces(g, segs).separates) return fail("input does not separate");
  std::vector<Seg> core = irreducible_core(g, segs);
  auto nb = remove_branch_points(g, core, Rat(tube_radius / 2));
  if (!nb) return fail("branch point removal failed");
  auto within = [&](const CylPoint& p) {
    return near_segments(g, segs, tube_radius, p);
  };
  auto ng = nudge_generic(g, *nb, FinitePointSet{}, within);
  if (!ng) return fail("turning point perturbation failed");
  std::vector<Seg> m = *ng;

  // Cut parameters per edge: midpoints of consecutive elements of
  // {0} ∪ {turning point projections} ∪ {1}.
  std::vector<std::vector<Rat>> cuts(g.edges.size());
  {
    std::vector<std::vector<Rat>> tips(g.edges.size());
    for (const ArrPoint& ap : turning_points(g, m)) {
      if (ap.at.p.is_vertex()) return fail("turning point over a vertex");
      tips[ap.at.p.edge].push_back(ap.at.p.t);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto& t = tips[e];
      std::sort(t.begin(), t.end());
      std::vector<Rat> pts = {Rat(0)};
      pts.insert(pts.end(), t.begin(), t.end());
      pts.push_back(1);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        cuts[e].push_back((pts[i] + pts[i + 1]) / 2);
    }
  }
  // Split segments at the cut fibers.
  std::vector<Seg> ms;
  for (const Seg& s : m) {
    std::vector<Rat> br = {s.t1, s.t2};
    for (const Rat& z : cuts[s.edge])
      if (s.t1 < z && z < s.t2) br.push_back(z);
    std::sort(br.begin(), br.end());
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      ms.push_back({s.edge, br[i], s.value_at(br[i]), br[i + 1],
                    s.value_at(br[i + 1])});
  }

  // Per-arc level extraction.
  std::map<int, std::vector<SheetPiece>> level_pieces;
  std::vector<std::pair<int, CylPoint>> beta_pts;
  int k = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<Rat> ends = {Rat(0)};
    ends.insert(ends.end(), cuts[e].begin(), cuts[e].end());
    ends.push_back(1);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      Rat a = ends[i], b = ends[i + 1];
      std::vector<Seg> arc;
      for (const Seg& s : ms)
        if (s.edge == (int)e && s.t1 >= a && s.t2 <= b) arc.push_back(s);
      if (arc.empty()) return fail("empty fiber over an arc");
      // Orientation: a wedge shows up as two endpoints on one fiber.
      // A wedge opening toward b makes the fiber over b larger.
      bool mirrored = false;
      {
        std::map<Rat, int> fy_a, fy_b;
        for (const Seg& s : arc) {
          if (s.t1 == a) fy_a[s.y1] = 1;
          if (s.t2 == b) fy_b[s.y2] = 1;
        }
        if (fy_b.size() > fy_a.size()) mirrored = true;
      }
      std::vector<Seg> arc2 = arc;
      if (mirrored)
        for (Seg& s : arc2) s = mirror_seg(s, a, b);
      auto po = process_arc(g, (int)e, arc2, a, b, tube_radius);
      if (!po) return fail("level extraction failed on an arc");
      if (mirrored) {
        for (auto& [lev, ps] : po->level_pieces)
          for (SheetPiece& p : ps) p = mirror_piece(p, a, b);
        for (auto& [lev, cp] : po->beta_pts)
          if (!cp.p.is_vertex())
            cp.p = GraphPoint::on_edge(g, cp.p.edge, Rat(a + b - cp.p.t));
      }
      for (auto& [lev, ps] : po->level_pieces) {
        k = std::max(k, lev);
        for (SheetPiece& p : ps) level_pieces[lev].push_back(std::move(p));
      }
      for (auto& bp : po->beta_pts) beta_pts.push_back(std::move(bp));
    }
  }
  if (k == 0) return fail("no levels found");

  Stairwell sw;
  sw.g = g;
  for (int lev = 1; lev <= k; ++lev) {
    auto it = level_pieces.find(lev);
    if (it == level_pieces.end())
      return fail("level " + std::to_string(lev) + " is empty");
    auto s = assemble_level(g, std::move(it->second));
    if (!s) return fail("level " + std::to_string(lev) + " did not assemble");
    sw.levels.push_back(std::move(*s));
  }
  sw.alphas.assign(k, {});
  sw.betas.assign(k, {});
  for (auto& [lev, cp] : beta_pts) {
    if (lev < 1 || lev >= k) return fail("junction between bad levels");
    sw.betas[lev - 1].insert(cp);
    sw.alphas[lev].insert(cp);
  }
  if (!validate_stairwell(sw, &sv))
    return fail("extracted family fails the stairwell axioms: " + sv);
  if (!separates_check(g, sw.levels))
    return fail("extracted stairwell does not separate");
  return sw;
}

}  // namespace plf

#include "plf/fold.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace plf {

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

ClosedSet from_raw(const Graph& g,
                   const std::vector<std::pair<int, Interval>>& iv,
                   const FinitePointSet& pts) {
  ClosedSet s = make_empty_set(g);
  for (const auto& [e, it] : iv) s.iv[e].push_back(it);
  s.isolated = pts;
  normalize(g, s);
  return s;
}

}  // namespace

bool validate_fold_sets(const Graph& g, const ClosedSet& g1,
                        const ClosedSet& g2, const ClosedSet& g3,
                        std::string* axiom) {
  auto fail = [&](const char* a) {
    if (axiom) *axiom = a;
    return false;
  };
  for (const ClosedSet* s : {&g1, &g2, &g3})
    if (s->empty() || !is_regular(g, *s)) return fail("F1");
  if (!(set_union(g, g1, g3) == make_full_set(g))) return fail("F2");
  ClosedSet inter = set_intersection(g, g1, g3);
  if (!set_subset(g, g2, inter)) return fail("F2");
  ClosedSet d1 = closure_of_difference(g, g1, g2);
  ClosedSet d3 = closure_of_difference(g, g3, g2);
  if (!set_intersection(g, d1, d3).empty()) return fail("F3");
  // The disjoint-closure axiom forces G1 ∩ G3 ⊆ G2.
  if (!(inter == g2)) return fail("F2");
  return true;
}

std::optional<SimpleFold> build_fold(const Graph& g, const ClosedSet& g1,
                                     const ClosedSet& g2,
                                     const ClosedSet& g3, std::string* why) {
  std::string ax;
  if (!validate_fold_sets(g, g1, g2, g3, &ax)) {
    if (why) *why = "set axiom " + ax + " violated";
    return std::nullopt;
  }
  SimpleFold f;
  f.G = g;
  f.G1 = g1;
  f.G2 = g2;
  f.G3 = g3;
  const ClosedSet* part_set[3] = {&g1, &g2, &g3};
  FinitePointSet b1 = boundary(g, g1);
  FinitePointSet b3 = boundary(g, g3);

  // Nodes: (copy, graph point) at every interval endpoint.
  std::map<std::pair<int, GraphPoint>, int> node_id;
  auto node = [&](int c, const GraphPoint& p) {
    auto [it, fresh] = node_id.insert({{c, p}, (int)node_id.size()});
    (void)fresh;
    return it->second;
  };
  for (int c = 0; c < 3; ++c)
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      for (const Interval& iv : part_set[c]->iv[e]) {
        node(c, GraphPoint::on_edge(g, (int)e, iv.a));
        node(c, GraphPoint::on_edge(g, (int)e, iv.b));
      }
  Dsu dsu((int)node_id.size());
  for (const GraphPoint& x : b1.pts) dsu.unite(node(0, x), node(1, x));
  for (const GraphPoint& x : b3.pts) dsu.unite(node(1, x), node(2, x));

  // Deterministic F-vertex ids (node_id map is ordered).
  std::vector<int> cls(node_id.size(), -1);
  for (const auto& [key, id] : node_id) {
    int r = dsu.find(id);
    if (cls[r] < 0) {
      cls[r] = f.F.num_vertices++;
      f.vmap.push_back(key.second);
    }
    cls[id] = cls[r];
  }
  for (int c = 0; c < 3; ++c)
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      for (const Interval& iv : part_set[c]->iv[e]) {
        int u = cls[node(c, GraphPoint::on_edge(g, (int)e, iv.a))];
        int v = cls[node(c, GraphPoint::on_edge(g, (int)e, iv.b))];
        f.F.edges.push_back(
            {u, v, Rat((iv.b - iv.a) * g.edges[e].length)});
        f.emap.push_back({(int)e, iv.a, iv.b});
        f.part.push_back(c + 1);
      }
  // Part subsets of F.
  ClosedSet* fparts[3] = {&f.F1, &f.F2, &f.F3};
  for (int c = 0; c < 3; ++c) {
    *fparts[c] = make_empty_set(f.F);
    for (std::size_t i = 0; i < f.F.edges.size(); ++i)
      if (f.part[i] == c + 1) fparts[c]->iv[i].push_back({0, 1});
    normalize(f.F, *fparts[c]);
  }
  return f;
}

// ── φ and friends ───────────────────────────────────────────────────

GraphPoint push_point(const SimpleFold& f, const GraphPoint& p) {
  if (p.is_vertex()) return f.vmap[p.vertex];
  const FoldEdgeMap& m = f.emap[p.edge];
  return GraphPoint::on_edge(f.G, m.g_edge, m.a + (m.b - m.a) * p.t);
}

ClosedSet image_of(const SimpleFold& f, const ClosedSet& s) {
  std::vector<std::pair<int, Interval>> raw;
  FinitePointSet pts;
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    const FoldEdgeMap& m = f.emap[e];
    for (const Interval& it : s.iv[e])
      raw.push_back({m.g_edge,
                     {m.a + (m.b - m.a) * it.a, m.a + (m.b - m.a) * it.b}});
  }
  for (int v = 0; v < f.F.num_vertices; ++v)
    if (s.vert[v]) pts.insert(f.vmap[v]);
  for (const GraphPoint& p : s.isolated.pts) pts.insert(push_point(f, p));
  return from_raw(f.G, raw, pts);
}

ClosedSet preimage_of(const SimpleFold& f, const ClosedSet& s) {
  ClosedSet out = make_empty_set(f.F);
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    const FoldEdgeMap& m = f.emap[e];
    Rat w = m.b - m.a;
    for (const Interval& it : s.iv[m.g_edge]) {
      Rat lo = rat_max(it.a, m.a);
      Rat hi = rat_min(it.b, m.b);
      if (lo > hi) continue;
      out.iv[e].push_back({(lo - m.a) / w, (hi - m.a) / w});
    }
    for (const GraphPoint& p : s.isolated.pts) {
      if (p.edge != m.g_edge || p.t < m.a || p.t > m.b) continue;
      out.isolated.insert(GraphPoint::on_edge(f.F, (int)e, (p.t - m.a) / w));
    }
  }
  for (int v = 0; v < f.F.num_vertices; ++v)
    if (contains(f.G, s, f.vmap[v])) out.vert[v] = 1;
  normalize(f.F, out);
  return out;
}

FinitePointSet preimage_points(const SimpleFold& f, const FinitePointSet& s) {
  FinitePointSet out;
  for (const GraphPoint& x : s.pts) {
    for (int v = 0; v < f.F.num_vertices; ++v)
      if (f.vmap[v] == x) out.insert(GraphPoint::at_vertex(v));
    if (x.is_vertex()) continue;
    for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
      const FoldEdgeMap& m = f.emap[e];
      if (m.g_edge != x.edge || x.t <= m.a || x.t >= m.b) continue;
      out.insert(GraphPoint::on_edge(f.F, (int)e, (x.t - m.a) / (m.b - m.a)));
    }
  }
  return out;
}

CylPointSet preimage_cyl(const SimpleFold& f, const CylPointSet& s) {
  CylPointSet out;
  for (const CylPoint& cp : s.pts) {
    FinitePointSet one;
    one.insert(cp.p);
    for (const GraphPoint& q : preimage_points(f, one).pts)
      out.insert({q, cp.y});
  }
  return out;
}

std::optional<FinitePointSet> closed_to_finite(const Graph& g,
                                               const ClosedSet& s) {
  for (const auto& e : s.iv)
    if (!e.empty()) return std::nullopt;
  FinitePointSet out = s.isolated;
  for (int v = 0; v < (int)s.vert.size(); ++v)
    if (s.vert[v]) out.insert(GraphPoint::at_vertex(v));
  return out;
}

// ── full validation ─────────────────────────────────────────────────

bool validate_fold(const SimpleFold& f, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::string ax;
  if (!validate_fold_sets(f.G, f.G1, f.G2, f.G3, &ax))
    return fail("set axiom " + ax + " violated");
  if (!f.F.valid(&ax)) return fail("F invalid: " + ax);
  if (f.emap.size() != f.F.edges.size() || f.part.size() != f.F.edges.size() ||
      (int)f.vmap.size() != f.F.num_vertices)
    return fail("map tables do not match F");
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    const FoldEdgeMap& m = f.emap[e];
    if (m.g_edge < 0 || m.g_edge >= (int)f.G.edges.size() || !(m.a < m.b) ||
        m.a < 0 || m.b > 1)
      return fail("bad edge map");
    if (f.part[e] < 1 || f.part[e] > 3) return fail("bad part index");
    if (!(push_point(f, GraphPoint::on_edge(f.F, (int)e, 0)) ==
          GraphPoint::on_edge(f.G, m.g_edge, m.a)) ||
        !(push_point(f, GraphPoint::on_edge(f.F, (int)e, 1)) ==
          GraphPoint::on_edge(f.G, m.g_edge, m.b)))
      return fail("vmap inconsistent with edge map");
  }
  const ClosedSet* fs[3] = {&f.F1, &f.F2, &f.F3};
  const ClosedSet* gs[3] = {&f.G1, &f.G2, &f.G3};
  // Parts must consist of whole edges and partition the edge set.
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    const ClosedSet& p = *fs[f.part[e] - 1];
    if (p.iv[e].size() != 1 || !(p.iv[e][0] == Interval{0, 1}))
      return fail("part sets do not cover their edges");
  }
  // (F4) φ restricted to each part: onto G_i and measure preserving,
  // hence injective.
  for (int c = 0; c < 3; ++c) {
    if (!is_regular(f.F, *fs[c])) return fail("F_i not regular");  // (3)
    if (!(image_of(f, *fs[c]) == *gs[c]))
      return fail("F4: image of part " + std::to_string(c + 1) +
                  " is not G_i");
    std::vector<Rat> len_f(f.G.edges.size(), Rat(0));
    std::vector<Rat> len_g(f.G.edges.size(), Rat(0));
    for (std::size_t e = 0; e < f.F.edges.size(); ++e)
      if (f.part[e] == c + 1)
        len_f[f.emap[e].g_edge] += f.emap[e].b - f.emap[e].a;
    for (std::size_t e = 0; e < f.G.edges.size(); ++e)
      for (const Interval& it : gs[c]->iv[e]) len_g[e] += it.b - it.a;
    if (len_f != len_g)
      return fail("F4: part " + std::to_string(c + 1) +
                  " does not map injectively");
  }
  // (F5) and the boundary identities.
  if (!set_intersection(f.F, f.F1, f.F3).empty())
    return fail("F5: F1 and F3 intersect");
  auto f12 = closed_to_finite(f.F, set_intersection(f.F, f.F1, f.F2));
  auto f23 = closed_to_finite(f.F, set_intersection(f.F, f.F2, f.F3));
  if (!f12 || !f23) return fail("F1∩F2 or F2∩F3 not finite");  // (4)
  FinitePointSet b1 = boundary(f.G, f.G1);
  FinitePointSet b3 = boundary(f.G, f.G3);
  auto push_fps = [&](const FinitePointSet& s) {
    FinitePointSet out;
    for (const GraphPoint& p : s.pts) out.insert(push_point(f, p));
    return out;
  };
  if (!(push_fps(*f12) == b1)) return fail("F5: φ(F1∩F2) != ∂G1");
  if (!(push_fps(*f23) == b3)) return fail("F5: φ(F2∩F3) != ∂G3");
  // (1)
  if (!(boundary(f.G, f.G2) == fps_union(b1, b3)))
    return fail("∂G2 != ∂G1 ∪ ∂G3");
  if (!fps_disjoint(b1, b3)) return fail("∂G1 and ∂G3 intersect");
  // (2)
  if (!(boundary(f.G, closure_of_difference(f.G, f.G1, f.G2)) == b3))
    return fail("∂(G1∖G2) != ∂G3");
  if (!(boundary(f.G, closure_of_difference(f.G, f.G3, f.G2)) == b1))
    return fail("∂(G3∖G2) != ∂G1");
  // (5)
  FinitePointSet bf1 = boundary(f.F, f.F1);
  FinitePointSet bf3 = boundary(f.F, f.F3);
  if (!(bf1 == *f12)) return fail("∂F1 != F1∩F2");
  if (!(bf3 == *f23)) return fail("∂F3 != F2∩F3");
  if (!(boundary(f.F, f.F2) == fps_union(bf1, bf3)))
    return fail("∂F2 != ∂F1 ∪ ∂F3");
  // (6)
  ClosedSet f23u = set_union(f.F, f.F2, f.F3);
  ClosedSet f12u = set_union(f.F, f.F1, f.F2);
  for (const OpenComponent& c : complement_of_points(f.F, bf1))
    if (open_component_meets(f.F, c, f.F1) &&
        open_component_meets(f.F, c, f23u))
      return fail("∂F1 does not separate F1 from F2∪F3");
  for (const OpenComponent& c : complement_of_points(f.F, bf3))
    if (open_component_meets(f.F, c, f.F3) &&
        open_component_meets(f.F, c, f12u))
      return fail("∂F3 does not separate F3 from F1∪F2");
  // (7) local openness of φ off the part boundaries.
  auto g_dirs = [&](const GraphPoint& x) {
    return x.is_vertex() ? f.G.degree(x.vertex) : 2;
  };
  for (int v = 0; v < f.F.num_vertices; ++v) {
    GraphPoint pv = GraphPoint::at_vertex(v);
    for (int c = 0; c < 3; ++c) {
      if (!fs[c]->vert[v]) continue;
      const FinitePointSet& bnd = c == 0 ? bf1 : (c == 2 ? bf3 : bf1);
      if (c == 1) {
        if (bf1.contains(pv) || bf3.contains(pv)) continue;
      } else if (bnd.contains(pv)) {
        continue;
      }
      int deg = 0;
      for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
        if (f.part[e] != c + 1) continue;
        if (f.F.edges[e].u == v) ++deg;
        if (f.F.edges[e].v == v) ++deg;
      }
      if (deg != g_dirs(f.vmap[v]))
        return fail("φ not open at an interior vertex of part " +
                    std::to_string(c + 1));
    }
  }
  return true;
}

// ── pocket construction ─────────────────────────────────────────────

std::optional<SimpleFold> fold_from_pocket(const Graph& g, const ClosedSet& a,
                                           const FinitePointSet& b1,
                                           const FinitePointSet& b2,
                                           std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return std::optional<SimpleFold>();
  };
  if (!g.connected()) return fail("G must be connected");
  if (a.empty() || !is_regular(g, a)) return fail("A must be regular non-empty");
  FinitePointSet ba = boundary(g, a);
  if (!fps_disjoint(b1, b2) || !(fps_union(b1, b2) == ba))
    return fail("∂A must split as B1 ⊔ B2");
  auto c1 = has_consistent_complement(g, a, b1);
  if (!c1 || !*c1) return fail("A not consistent rel B1");
  // Consistency rel B2 is automatic; verify the derivation.
  auto c2 = has_consistent_complement(g, a, b2);
  if (!c2 || !*c2) return fail("internal: consistency rel B2 did not follow");
  ClosedSet g1 = side_of(g, a, b1);
  ClosedSet g3 = side_of(g, a, b2);
  return build_fold(g, g1, a, g3, why);
}

// ── pullbacks of straight sets ──────────────────────────────────────

ClosedSet part_union(const SimpleFold& f, const std::vector<int>& parts) {
  ClosedSet out = make_empty_set(f.F);
  const ClosedSet* fs[3] = {&f.F1, &f.F2, &f.F3};
  for (int p : parts) out = set_union(f.F, out, *fs[p - 1]);
  return out;
}

StraightSet pullback_straight(const SimpleFold& f, const StraightSet& s) {
  StraightSet out;
  out.base = preimage_of(f, s.base);
  out.pieces.resize(f.F.edges.size());
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    const FoldEdgeMap& m = f.emap[e];
    Rat w = m.b - m.a;
    for (const Interval& it : out.base.iv[e]) {
      Rat x1 = m.a + w * it.a;
      Rat x2 = m.a + w * it.b;
      const SheetPiece* src = nullptr;
      for (std::size_t i = 0; i < s.base.iv[m.g_edge].size(); ++i) {
        const Interval& o = s.base.iv[m.g_edge][i];
        if (o.a <= x1 && x2 <= o.b) {
          src = &s.pieces[m.g_edge][i];
          break;
        }
      }
      assert(src);
      SheetPiece np;
      np.edge = (int)e;
      np.bp.push_back({it.a, src->value_at(x1)});
      for (const auto& b : src->bp)
        if (b.first > x1 && b.first < x2)
          np.bp.push_back({(b.first - m.a) / w, b.second});
      np.bp.push_back({it.b, src->value_at(x2)});
      canonicalize_piece(np);
      out.pieces[e].push_back(std::move(np));
    }
  }
  return out;
}

std::optional<StraightSet> pullback_in_parts(const SimpleFold& f,
                                             const StraightSet& s,
                                             const std::vector<int>& parts) {
  return restrict_straight(f.F, pullback_straight(f, s), part_union(f, parts));
}

// ── straight preimage end-set formulas ──────────────────────────────

bool straight_preimage_hypothesis(const SimpleFold& f, const StraightSet& s) {
  FinitePointSet common = fps_intersection(boundary(f.G, s.base),
                                           boundary(f.G, f.G2));
  if (common.empty()) return true;
  // φ(F2) must agree with π(S) near the common boundary points, i.e.
  // G2 ∩ V ⊆ π(S) ∩ V for some neighbourhood V.
  ClosedSet inter = set_intersection(f.G, f.G2, s.base);
  return agreement_radius(f.G, inter, f.G2, common).has_value();
}

CylPointSet predicted_ends_full(const SimpleFold& f, const StraightSet& s) {
  CylPointSet pre = preimage_cyl(f, end_set(f.G, s));
  FinitePointSet bf2 = boundary(f.F, f.F2);
  CylPointSet out;
  for (const CylPoint& p : pre.pts)
    if (!bf2.contains(p.p)) out.insert(p);
  return out;
}

CylPointSet predicted_ends_front(const SimpleFold& f, const StraightSet& s) {
  CylPointSet pre = preimage_cyl(f, end_set(f.G, s));
  ClosedSet f12 = part_union(f, {1, 2});
  FinitePointSet bf1 = boundary(f.F, f.F1);
  FinitePointSet bf3 = boundary(f.F, f.F3);
  CylPointSet out;
  for (const CylPoint& p : pre.pts)
    if (contains(f.F, f12, p.p) && !bf1.contains(p.p)) out.insert(p);
  auto s2 = pullback_in_parts(f, s, {1, 2});
  if (s2) {
    for (const GraphPoint& p : bf3.pts) {
      auto y = evaluate(f.F, *s2, p);
      if (y) out.insert({p, *y});
    }
  }
  return out;
}

// ── reduction to a connected domain ─────────────────────────────────

std::vector<ClosedSet> fold_components(const SimpleFold& f) {
  return components(f.F, make_full_set(f.F));
}

std::optional<FoldReduction> reduce_to_component(const SimpleFold& f,
                                                 const ClosedSet& c,
                                                 std::string* why) {
  FoldReduction r;
  r.vertex_map.assign(f.F.num_vertices, -1);
  r.edge_map.assign(f.F.edges.size(), -1);
  SimpleFold& nf = r.fold;
  nf.G = f.G;
  for (int v = 0; v < f.F.num_vertices; ++v) {
    if (!c.vert[v]) continue;
    r.vertex_map[v] = nf.F.num_vertices++;
    nf.vmap.push_back(f.vmap[v]);
  }
  for (std::size_t e = 0; e < f.F.edges.size(); ++e) {
    if (c.iv[e].size() != 1 || !(c.iv[e][0] == Interval{0, 1})) continue;
    r.edge_map[e] = (int)nf.F.edges.size();
    nf.F.edges.push_back({r.vertex_map[f.F.edges[e].u],
                          r.vertex_map[f.F.edges[e].v], f.F.edges[e].length});
    nf.emap.push_back(f.emap[e]);
    nf.part.push_back(f.part[e]);
  }
  ClosedSet* fparts[3] = {&nf.F1, &nf.F2, &nf.F3};
  ClosedSet* gparts[3] = {&nf.G1, &nf.G2, &nf.G3};
  for (int p = 0; p < 3; ++p) {
    *fparts[p] = make_empty_set(nf.F);
    for (std::size_t e = 0; e < nf.F.edges.size(); ++e)
      if (nf.part[e] == p + 1) fparts[p]->iv[e].push_back({0, 1});
    normalize(nf.F, *fparts[p]);
    *gparts[p] = image_of(nf, *fparts[p]);
  }
  if (!validate_fold(nf, why)) return std::nullopt;
  return r;
}

StraightSet transport_straight(const FoldReduction& r, const Graph& old_f,
                               const StraightSet& s) {
  StraightSet out;
  out.base = make_empty_set(r.fold.F);
  out.pieces.resize(r.fold.F.edges.size());
  for (std::size_t e = 0; e < old_f.edges.size(); ++e) {
    int ne = r.edge_map[e];
    if (ne < 0) continue;  // intersect away the dropped components
    out.base.iv[ne] = s.base.iv[e];
    out.pieces[ne] = s.pieces[e];
    for (SheetPiece& p : out.pieces[ne]) p.edge = ne;
  }
  for (int v = 0; v < old_f.num_vertices; ++v)
    if (s.base.vert[v] && r.vertex_map[v] >= 0)
      out.base.vert[r.vertex_map[v]] = 1;
  normalize(r.fold.F, out.base);
  return out;
}

CylPointSet transport_cyl(const FoldReduction& r, const Graph& old_f,
                          const CylPointSet& s) {
  (void)old_f;
  CylPointSet out;
  for (const CylPoint& cp : s.pts) {
    if (cp.p.is_vertex()) {
      int nv = r.vertex_map[cp.p.vertex];
      if (nv >= 0) out.insert({GraphPoint::at_vertex(nv), cp.y});
    } else {
      int ne = r.edge_map[cp.p.edge];
      if (ne >= 0)
        out.insert({GraphPoint::on_edge(r.fold.F, ne, cp.p.t), cp.y});
    }
  }
  return out;
}

}  // namespace plf

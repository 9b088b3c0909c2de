#include "plf/regular.hpp"

#include <algorithm>
#include <cassert>
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

// Merge a possibly unsorted list of closed (possibly degenerate)
// intervals into a sorted list of maximal pairwise non-touching ones.
std::vector<Interval> merge_atoms(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  std::vector<Interval> out;
  for (const Interval& it : v) {
    if (!out.empty() && it.a <= out.back().b) {
      out.back().b = rat_max(out.back().b, it.b);
    } else {
      out.push_back(it);
    }
  }
  return out;
}

}  // namespace

bool ClosedSet::empty() const {
  if (!isolated.empty()) return false;
  for (char c : vert)
    if (c) return false;
  for (const auto& e : iv)
    if (!e.empty()) return false;
  return true;
}

ClosedSet make_empty_set(const Graph& g) {
  ClosedSet s;
  s.iv.resize(g.edges.size());
  s.vert.assign(g.num_vertices, 0);
  return s;
}

ClosedSet make_full_set(const Graph& g) {
  ClosedSet s = make_empty_set(g);
  for (auto& e : s.iv) e.push_back({0, 1});
  normalize(g, s);
  return s;
}

ClosedSet make_set(const Graph& g,
                   const std::vector<std::pair<int, Interval>>& raw) {
  ClosedSet s = make_empty_set(g);
  for (const auto& [e, it] : raw) {
    assert(e >= 0 && e < (int)g.edges.size());
    assert(it.a >= 0 && it.a <= it.b && it.b <= 1);
    s.iv[e].push_back(it);
  }
  normalize(g, s);
  return s;
}

void normalize(const Graph& g, ClosedSet& s) {
  s.iv.resize(g.edges.size());
  s.vert.resize(g.num_vertices, 0);
  // Vertex points hiding in `isolated` become vertex membership;
  // edge-interior isolated points become degenerate atoms for now.
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    atoms[e] = std::move(s.iv[e]);
  for (const GraphPoint& p : s.isolated.pts) {
    if (p.is_vertex())
      s.vert[p.vertex] = 1;
    else
      atoms[p.edge].push_back({p.t, p.t});
  }
  s.isolated = {};
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<Interval> merged = merge_atoms(std::move(atoms[e]));
    s.iv[e].clear();
    for (const Interval& it : merged) {
      if (it.a == it.b) {
        if (it.a == 0)
          s.vert[g.edges[e].u] = 1;
        else if (it.a == 1)
          s.vert[g.edges[e].v] = 1;
        else
          s.isolated.insert(GraphPoint::on_edge(g, (int)e, it.a));
      } else {
        if (it.a == 0) s.vert[g.edges[e].u] = 1;
        if (it.b == 1) s.vert[g.edges[e].v] = 1;
        s.iv[e].push_back(it);
      }
    }
  }
}

namespace {

// Full per-edge closed atom list: intervals plus degenerate atoms for
// member end vertices and isolated points, merged.
std::vector<Interval> edge_atoms(const Graph& g, const ClosedSet& s, int e) {
  std::vector<Interval> v = s.iv[e];
  if (s.vert[g.edges[e].u]) v.push_back({0, 0});
  if (s.vert[g.edges[e].v]) v.push_back({1, 1});
  for (const GraphPoint& p : s.isolated.pts)
    if (p.edge == e) v.push_back({p.t, p.t});
  return merge_atoms(std::move(v));
}

ClosedSet from_atoms(const Graph& g,
                     std::vector<std::vector<Interval>> atoms) {
  ClosedSet s = make_empty_set(g);
  s.iv = std::move(atoms);
  normalize(g, s);
  return s;
}

}  // namespace

bool contains(const Graph& g, const ClosedSet& s, const GraphPoint& p) {
  if (p.is_vertex()) return s.vert[p.vertex] != 0;
  for (const Interval& it : s.iv[p.edge])
    if (it.a <= p.t && p.t <= it.b) return true;
  return s.isolated.contains(p);
}

bool set_subset(const Graph& g, const ClosedSet& a, const ClosedSet& b) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto av = edge_atoms(g, a, (int)e);
    auto bv = edge_atoms(g, b, (int)e);
    // Both lists are merged, so each a-atom must fit in one b-atom.
    std::size_t j = 0;
    for (const Interval& it : av) {
      while (j < bv.size() && bv[j].b < it.a) ++j;
      if (j == bv.size() || bv[j].a > it.a || bv[j].b < it.b) return false;
    }
  }
  return true;
}

ClosedSet set_union(const Graph& g, const ClosedSet& a, const ClosedSet& b) {
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    atoms[e] = edge_atoms(g, a, (int)e);
    auto bv = edge_atoms(g, b, (int)e);
    atoms[e].insert(atoms[e].end(), bv.begin(), bv.end());
  }
  return from_atoms(g, std::move(atoms));
}

ClosedSet set_intersection(const Graph& g, const ClosedSet& a,
                           const ClosedSet& b) {
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto av = edge_atoms(g, a, (int)e);
    auto bv = edge_atoms(g, b, (int)e);
    std::size_t i = 0, j = 0;
    while (i < av.size() && j < bv.size()) {
      Rat lo = rat_max(av[i].a, bv[j].a);
      Rat hi = rat_min(av[i].b, bv[j].b);
      if (lo <= hi) atoms[e].push_back({lo, hi});
      if (av[i].b < bv[j].b)
        ++i;
      else
        ++j;
    }
  }
  return from_atoms(g, std::move(atoms));
}

ClosedSet closure_of_difference(const Graph& g, const ClosedSet& a,
                                const ClosedSet& b) {
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto av = edge_atoms(g, a, (int)e);
    auto bv = edge_atoms(g, b, (int)e);
    for (const Interval& it : av) {
      if (it.a == it.b) {
        bool covered = false;
        for (const Interval& bt : bv)
          if (bt.a <= it.a && it.a <= bt.b) covered = true;
        if (!covered) atoms[e].push_back(it);
        continue;
      }
      // Closures of the relatively open pieces of [a,b] \ B.
      Rat cur = it.a;
      bool done = false;
      for (const Interval& bt : bv) {
        if (bt.b < cur) continue;
        if (bt.a > it.b) break;
        if (bt.a > cur) atoms[e].push_back({cur, rat_min(bt.a, it.b)});
        cur = rat_max(cur, bt.b);
        if (cur >= it.b) {
          done = true;
          break;
        }
      }
      if (!done && cur < it.b) atoms[e].push_back({cur, it.b});
    }
  }
  return from_atoms(g, std::move(atoms));
}

bool is_regular(const Graph& g, const ClosedSet& s) {
  if (!s.isolated.empty()) return false;
  std::vector<char> touched(g.num_vertices, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Interval& it : s.iv[e]) {
      if (it.a == 0) touched[g.edges[e].u] = 1;
      if (it.b == 1) touched[g.edges[e].v] = 1;
    }
  }
  for (int v = 0; v < g.num_vertices; ++v)
    if (s.vert[v] && !touched[v]) return false;
  return true;
}

FinitePointSet boundary(const Graph& g, const ClosedSet& s) {
  assert(is_regular(g, s));
  FinitePointSet out;
  // Interior interval endpoints.
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Interval& it : s.iv[e]) {
      if (it.a > 0) out.insert(GraphPoint::on_edge(g, (int)e, it.a));
      if (it.b < 1) out.insert(GraphPoint::on_edge(g, (int)e, it.b));
    }
  }
  // A member vertex is boundary iff some incident edge end is locally
  // outside the set.
  std::vector<char> outside_dir(g.num_vertices, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    bool lo = false, hi = false;
    for (const Interval& it : s.iv[e]) {
      if (it.a == 0) lo = true;
      if (it.b == 1) hi = true;
    }
    if (!lo) outside_dir[g.edges[e].u] = 1;
    if (!hi) outside_dir[g.edges[e].v] = 1;
  }
  for (int v = 0; v < g.num_vertices; ++v)
    if (s.vert[v] && outside_dir[v]) out.insert(GraphPoint::at_vertex(v));
  return out;
}

std::vector<ClosedSet> components(const Graph& g, const ClosedSet& s) {
  // Atoms: member vertices, per-edge intervals, isolated points.
  struct Atom {
    int edge;
    Interval it;  // degenerate for isolated points
  };
  std::vector<Atom> atoms;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (const Interval& it : s.iv[e]) atoms.push_back({(int)e, it});
  for (const GraphPoint& p : s.isolated.pts)
    atoms.push_back({p.edge, {p.t, p.t}});
  Dsu dsu(g.num_vertices + (int)atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    int node = g.num_vertices + (int)i;
    if (atoms[i].it.a == 0) dsu.unite(node, g.edges[atoms[i].edge].u);
    if (atoms[i].it.b == 1) dsu.unite(node, g.edges[atoms[i].edge].v);
  }
  // Collect components keyed by union-find root, deterministic order
  // by first atom/vertex encountered.
  std::vector<int> root_index(g.num_vertices + atoms.size(), -1);
  std::vector<ClosedSet> out;
  auto comp_for = [&](int node) -> ClosedSet& {
    int r = dsu.find(node);
    if (root_index[r] < 0) {
      root_index[r] = (int)out.size();
      out.push_back(make_empty_set(g));
    }
    return out[root_index[r]];
  };
  for (int v = 0; v < g.num_vertices; ++v)
    if (s.vert[v]) comp_for(v).vert[v] = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    ClosedSet& c = comp_for(g.num_vertices + (int)i);
    if (atoms[i].it.a == atoms[i].it.b)
      c.isolated.insert(
          GraphPoint::on_edge(g, atoms[i].edge, atoms[i].it.a));
    else
      c.iv[atoms[i].edge].push_back(atoms[i].it);
  }
  for (ClosedSet& c : out) normalize(g, c);
  return out;
}

// ── complement components ───────────────────────────────────────────

namespace {

// Shared machinery: decompose the complement of a family of per-edge
// closed atom lists (plus a set of blocked vertices) into open
// components.  `blocked[v]` means v itself is removed (its removal
// point contributes a vertex boundary point to adjacent pieces).
std::vector<OpenComponent> open_complement(
    const Graph& g, const std::vector<std::vector<Interval>>& atoms,
    const std::vector<char>& blocked) {
  struct Piece {
    int edge;
    Rat a, b;
  };
  std::vector<Piece> pieces;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Rat cur = 0;
    for (const Interval& it : atoms[e]) {
      if (it.a > cur) pieces.push_back({(int)e, cur, it.a});
      cur = it.b;
    }
    if (cur < 1) pieces.push_back({(int)e, cur, 1});
  }
  Dsu dsu(g.num_vertices + (int)pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    int node = g.num_vertices + (int)i;
    int u = g.edges[pieces[i].edge].u;
    int v = g.edges[pieces[i].edge].v;
    if (pieces[i].a == 0 && !blocked[u]) dsu.unite(node, u);
    if (pieces[i].b == 1 && !blocked[v]) dsu.unite(node, v);
  }
  std::vector<int> root_index(g.num_vertices + pieces.size(), -1);
  std::vector<OpenComponent> out;
  auto comp_for = [&](int node) -> OpenComponent& {
    int r = dsu.find(node);
    if (root_index[r] < 0) {
      root_index[r] = (int)out.size();
      out.emplace_back();
    }
    return out[root_index[r]];
  };
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    OpenComponent& c = comp_for(g.num_vertices + (int)i);
    c.pieces.push_back({pieces[i].edge, pieces[i].a, pieces[i].b});
    int u = g.edges[pieces[i].edge].u;
    int v = g.edges[pieces[i].edge].v;
    if (pieces[i].a > 0)
      c.bdry.insert(GraphPoint::on_edge(g, pieces[i].edge, pieces[i].a));
    else if (blocked[u])
      c.bdry.insert(GraphPoint::at_vertex(u));
    if (pieces[i].b < 1)
      c.bdry.insert(GraphPoint::on_edge(g, pieces[i].edge, pieces[i].b));
    else if (blocked[v])
      c.bdry.insert(GraphPoint::at_vertex(v));
  }
  // Interior vertices of each component.  A free vertex always has an
  // adjacent piece (its edge ends are uncovered), so it was united.
  for (int v = 0; v < g.num_vertices; ++v) {
    if (blocked[v]) continue;
    int r = dsu.find(v);
    if (root_index[r] >= 0) out[root_index[r]].vertices.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<OpenComponent> complement_components(const Graph& g,
                                                 const ClosedSet& a) {
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    atoms[e] = edge_atoms(g, a, (int)e);
  std::vector<char> blocked(g.num_vertices, 0);
  for (int v = 0; v < g.num_vertices; ++v) blocked[v] = a.vert[v];
  return open_complement(g, atoms, blocked);
}

std::vector<OpenComponent> complement_of_points(const Graph& g,
                                                const FinitePointSet& b) {
  std::vector<std::vector<Interval>> atoms(g.edges.size());
  std::vector<char> blocked(g.num_vertices, 0);
  for (const GraphPoint& p : b.pts) {
    if (p.is_vertex())
      blocked[p.vertex] = 1;
    else
      atoms[p.edge].push_back({p.t, p.t});
  }
  for (auto& v : atoms) v = merge_atoms(std::move(v));
  return open_complement(g, atoms, blocked);
}

bool open_component_meets(const Graph& g, const OpenComponent& c,
                          const ClosedSet& a) {
  for (int v : c.vertices)
    if (a.vert[v]) return true;
  for (const OpenPiece& pc : c.pieces) {
    for (const Interval& it : edge_atoms(g, a, pc.edge)) {
      Rat lo = rat_max(it.a, pc.a);
      Rat hi = rat_min(it.b, pc.b);
      if (lo < hi) return true;
      if (it.a == it.b && pc.a < it.a && it.a < pc.b) return true;
    }
  }
  return false;
}

bool open_component_contains(const Graph& g, const OpenComponent& c,
                             const GraphPoint& p) {
  if (p.is_vertex())
    return std::find(c.vertices.begin(), c.vertices.end(), p.vertex) !=
           c.vertices.end();
  for (const OpenPiece& pc : c.pieces)
    if (pc.edge == p.edge && pc.a < p.t && p.t < pc.b) return true;
  return false;
}

std::optional<bool> has_consistent_complement(const Graph& g,
                                              const ClosedSet& a,
                                              const FinitePointSet& b) {
  if (!is_regular(g, a)) return std::nullopt;
  if (!fps_subset(b, boundary(g, a))) return std::nullopt;
  for (const OpenComponent& c : complement_components(g, a)) {
    if (!fps_subset(c.bdry, b) && !fps_disjoint(c.bdry, b)) return false;
  }
  return true;
}

ClosedSet side_of(const Graph& g, const ClosedSet& a,
                  const FinitePointSet& b) {
  ClosedSet out = make_empty_set(g);
  if (a.empty()) return out;
  for (const OpenComponent& c : complement_of_points(g, b)) {
    if (!open_component_meets(g, c, a)) continue;
    for (const OpenPiece& pc : c.pieces)
      out.iv[pc.edge].push_back({pc.a, pc.b});
    for (int v : c.vertices) out.vert[v] = 1;
  }
  normalize(g, out);
  return out;
}

// ── local agreement ─────────────────────────────────────────────────

namespace {

// Earliest disagreement between a and b along edge e starting from
// parameter p0 in direction dir (+1/-1), as a distance in [0, extent].
// Returns the largest r such that they agree on distances in (0, r),
// capped at extent (the far edge end is excluded from the open ball).
Rat direction_agreement(const Graph& g, const ClosedSet& a,
                        const ClosedSet& b, int e, const Rat& p0, int dir) {
  Rat extent = dir > 0 ? Rat(1 - p0) : p0;
  auto at_dist = [&](const Rat& d) {
    return GraphPoint::on_edge(g, e, dir > 0 ? Rat(p0 + d) : Rat(p0 - d));
  };
  auto agree_at = [&](const Rat& d) {
    GraphPoint q = at_dist(d);
    return contains(g, a, q) == contains(g, b, q);
  };
  // Critical distances: atom endpoints of either set within range.
  std::vector<Rat> crit;
  for (const ClosedSet* s : {&a, &b}) {
    for (const Interval& it : edge_atoms(g, *s, e)) {
      for (const Rat& x : {it.a, it.b}) {
        Rat d = dir > 0 ? Rat(x - p0) : Rat(p0 - x);
        if (d > 0 && d < extent) crit.push_back(d);
      }
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  Rat prev = 0;
  for (const Rat& d : crit) {
    // Open gap (prev, d) has constant membership for both sets.
    if (!agree_at(Rat((prev + d) / 2))) return prev;
    if (!agree_at(d)) return d;
    prev = d;
  }
  if (prev < extent && !agree_at(Rat((prev + extent) / 2))) return prev;
  return extent;
}

}  // namespace

std::optional<Rat> agreement_radius(const Graph& g, const ClosedSet& a,
                                    const ClosedSet& b,
                                    const FinitePointSet& c) {
  Rat best = 1;
  for (const GraphPoint& p : c.pts) {
    if (contains(g, a, p) != contains(g, b, p)) return std::nullopt;
    std::vector<std::pair<int, std::pair<Rat, int>>> dirs;  // (edge,(p0,dir))
    if (p.is_vertex()) {
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].u == p.vertex) dirs.push_back({(int)e, {Rat(0), 1}});
        if (g.edges[e].v == p.vertex) dirs.push_back({(int)e, {Rat(1), -1}});
      }
    } else {
      dirs.push_back({p.edge, {p.t, 1}});
      dirs.push_back({p.edge, {p.t, -1}});
    }
    for (const auto& [e, pd] : dirs) {
      Rat r = direction_agreement(g, a, b, e, pd.first, pd.second);
      if (r == 0) return std::nullopt;
      best = rat_min(best, r);
    }
  }
  return best;
}

}  // namespace plf

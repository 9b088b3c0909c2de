#pragma once
// Shared test infrastructure: corpus loading, a deterministic RNG over
// grid rationals, randomized instance generators, and independent
// oracles used to cross-check the library implementations.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "plf/examples.hpp"
#include "plf/fold.hpp"
#include "plf/io.hpp"
#include "plf/stairwell.hpp"
#include "plf/unfold.hpp"

namespace plftest {

using namespace plf;

// ── corpus ──────────────────────────────────────────────────────────

inline std::string corpus_path(const std::string& name) {
  return std::string(PLF_CORPUS_DIR) + "/" + name;
}

inline Document load_corpus(const std::string& name) {
  std::string why;
  auto doc = load_document(corpus_path(name), &why);
  if (!doc) {
    std::fprintf(stderr, "cannot load corpus file %s: %s\n", name.c_str(),
                 why.c_str());
    std::abort();
  }
  return *doc;
}

inline std::vector<std::string> corpus_names() {
  return {"simple_fold_arc.json", "simple_fold_triod.json", "straight.json",
          "make_stairwell.json",  "non_simple.json",        "interval_maps.json",
          "stairwell_h5.json",    "pipeline_h1.json",       "pipeline_h3.json",
          "pipeline_h5.json",     "pipeline_h7.json",       "unfold.json",
          "brokenstairwell.json"};
}

// ── deterministic RNG over grid rationals ───────────────────────────

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}

  int pick(int lo, int hi) {  // inclusive
    return (int)(eng() % (unsigned long long)(hi - lo + 1)) + lo;
  }
  bool coin() { return pick(0, 1) == 1; }
  // Random multiple of 1/denom in [lo_num/denom, hi_num/denom].
  Rat grid(int denom, int lo_num, int hi_num) {
    return Rat(pick(lo_num, hi_num), denom);
  }
  // k distinct sorted multiples of 1/denom strictly inside (0,1).
  std::vector<Rat> sorted_grid(int k, int denom) {
    std::vector<int> nums(denom - 1);
    for (int i = 0; i < denom - 1; ++i) nums[i] = i + 1;
    std::shuffle(nums.begin(), nums.end(), eng);
    nums.resize(k);
    std::sort(nums.begin(), nums.end());
    std::vector<Rat> out;
    for (int n : nums) out.emplace_back(n, denom);
    return out;
  }
};

// ── random sets and σ-calculus pairs ────────────────────────────────

inline Graph random_graph(Rng& rng) {
  switch (rng.pick(0, 2)) {
    case 0: return make_arc();
    case 1: return make_circle();
    default: return make_triod();
  }
}

// Non-empty regular set: up to two disjoint intervals per edge with
// endpoints on the 1/32 grid, occasionally reaching the edge ends.
inline ClosedSet random_regular_set(const Graph& g, Rng& rng) {
  for (;;) {
    std::vector<std::pair<int, Interval>> raw;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
      int n = rng.pick(0, 2);
      if (n == 0) continue;
      auto cuts = rng.sorted_grid(2 * n, 32);
      if (rng.coin()) cuts.front() = 0;
      if (rng.coin()) cuts.back() = 1;
      for (int i = 0; i + 1 < 2 * n; i += 2)
        raw.push_back({e, {cuts[i], cuts[i + 1]}});
    }
    if (raw.empty()) continue;
    ClosedSet a = make_set(g, raw);
    if (!a.empty() && is_regular(g, a)) return a;
  }
}

// (A, B) with G connected, A and B non-empty, B ⊆ ∂A, and A with
// consistent complement relative to B: B is grown from the boundary
// of one complement component to a consistency fixpoint.
inline bool make_consistent_pair(const Graph& g, Rng& rng, ClosedSet* a_out,
                                 FinitePointSet* b_out) {
  ClosedSet a = random_regular_set(g, rng);
  FinitePointSet bd = boundary(g, a);
  if (bd.empty()) return false;
  auto comps = complement_components(g, a);
  std::vector<int> seeds(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) seeds[i] = (int)i;
  std::shuffle(seeds.begin(), seeds.end(), rng.eng);
  for (int s : seeds) {
    if (comps[s].bdry.empty()) continue;
    FinitePointSet b = comps[s].bdry;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& c : comps) {
        if (!fps_disjoint(c.bdry, b) && !fps_subset(c.bdry, b)) {
          b = fps_union(b, c.bdry);
          grew = true;
        }
      }
    }
    auto ok = has_consistent_complement(g, a, b);
    if (ok && *ok) {
      *a_out = a;
      *b_out = b;
      return true;
    }
  }
  return false;
}

inline void consistent_pair(const Graph& g, Rng& rng, ClosedSet* a,
                            FinitePointSet* b) {
  while (!make_consistent_pair(g, rng, a, b)) {
  }
}

// ── random fold triples ─────────────────────────────────────────────

struct FoldTriple {
  Graph g;
  ClosedSet g1, g2, g3;
};

// A valid triple: G2 a random pocket A, boundary split B1 ⊔ B2 with A
// consistent relative to B1, G1 = σ_B1(A), G3 = σ_B2(A).
inline FoldTriple random_fold_triple(Rng& rng) {
  for (;;) {
    Graph g = random_graph(rng);
    if (rng.pick(0, 19) == 0) {
      ClosedSet full = make_full_set(g);
      return {g, full, full, full};  // degenerate pocket A = G
    }
    ClosedSet a;
    FinitePointSet b1;
    if (!make_consistent_pair(g, rng, &a, &b1)) continue;
    FinitePointSet b2 = fps_difference(boundary(g, a), b1);
    ClosedSet g1 = side_of(g, a, b1);
    ClosedSet g3 = side_of(g, a, b2);
    if (validate_fold_sets(g, g1, a, g3)) return {g, g1, a, g3};
  }
}

// Deliberately broken triples, with the axiom that should be named.
inline std::vector<std::pair<FoldTriple, std::string>> broken_fold_triples() {
  std::vector<std::pair<FoldTriple, std::string>> out;
  auto iv = [](const Graph& g, int e, const Rat& a, const Rat& b) {
    return make_set(g, {{e, {a, b}}});
  };
  for (const Graph& g : {make_arc(), make_triod()}) {
    ClosedSet full = make_full_set(g);
    // F1: an empty part.
    out.push_back({{g, iv(g, 0, 0, Rat(1, 2)), make_empty_set(g), full}, "F1"});
    // F1: a part with an isolated point (not regular).
    ClosedSet dot = make_empty_set(g);
    dot.isolated.insert(GraphPoint::on_edge(g, 0, Rat(1, 2)));
    out.push_back({{g, full, dot, full}, "F1"});
    // F2: G1 ∪ G3 misses the middle of edge 0.
    out.push_back({{g, iv(g, 0, 0, Rat(1, 3)), iv(g, 0, Rat(1, 4), Rat(1, 3)),
                    set_union(g, iv(g, 0, Rat(2, 3), 1),
                              closure_of_difference(g, full, iv(g, 0, 0, 1)))},
                   "F2"});
    // F2: G2 not inside G1 ∩ G3.
    out.push_back({{g, iv(g, 0, 0, Rat(1, 2)), full,
                    set_union(g, iv(g, 0, Rat(1, 2), 1),
                              closure_of_difference(g, full, iv(g, 0, 0, 1)))},
                   "F2"});
    // F3: closures of G1∖G2 and G3∖G2 meet at 1/2.
    out.push_back({{g, full, iv(g, 0, Rat(1, 4), Rat(1, 2)),
                    set_union(g, iv(g, 0, Rat(1, 4), Rat(3, 4)),
                              closure_of_difference(g, full, iv(g, 0, 0, 1)))},
                   "F3"});
  }
  // Arc-specific variants to reach 20 cases total.
  Graph arc = make_arc();
  auto seg = [&](const Rat& a, const Rat& b) {
    return make_set(arc, {{0, {a, b}}});
  };
  ClosedSet dot2 = make_empty_set(arc);
  dot2.isolated.insert(GraphPoint::on_edge(arc, 0, Rat(1, 3)));
  out.push_back({{arc, seg(0, Rat(3, 8)), make_empty_set(arc), seg(Rat(3, 8), 1)}, "F1"});
  out.push_back({{arc, seg(0, Rat(5, 8)), seg(Rat(1, 2), Rat(5, 8)), seg(Rat(3, 8), 1)}, "F3"});
  out.push_back({{arc, seg(0, Rat(3, 8)), seg(Rat(1, 4), Rat(3, 8)), seg(Rat(1, 2), 1)}, "F2"});
  out.push_back({{arc, seg(0, Rat(3, 4)), seg(Rat(1, 8), Rat(1, 4)), seg(Rat(3, 4), 1)}, "F2"});
  out.push_back({{arc, seg(Rat(1, 8), Rat(3, 4)), seg(Rat(1, 4), Rat(1, 2)), seg(Rat(1, 2), 1)}, "F2"});
  out.push_back({{arc, seg(0, Rat(7, 8)), seg(Rat(1, 2), Rat(3, 4)), seg(Rat(1, 2), 1)}, "F3"});
  out.push_back({{arc, seg(0, Rat(1, 2)), seg(Rat(1, 2), 1), seg(Rat(1, 2), 1)}, "F2"});
  out.push_back({{arc, seg(0, 1), seg(Rat(1, 4), Rat(1, 2)), seg(Rat(1, 4), Rat(3, 4))}, "F3"});
  out.push_back({{arc, make_empty_set(arc), make_empty_set(arc), seg(0, 1)}, "F1"});
  out.push_back({{arc, seg(0, 1), dot2, seg(0, 1)}, "F1"});
  return out;
}

// ── random straight sets over a fold's base graph ───────────────────

// Straight set over base: per base interval one PL piece; heights at
// shared vertices assigned first so π stays one-to-one.
inline StraightSet random_sheet(const Graph& g, const ClosedSet& base,
                                Rng& rng) {
  StraightSet s;
  s.base = base;
  s.pieces.assign(g.edges.size(), {});
  std::vector<Rat> vh(g.num_vertices);
  for (int v = 0; v < g.num_vertices; ++v) vh[v] = rng.grid(16, 2, 14);
  for (int e = 0; e < (int)g.edges.size(); ++e) {
    for (const Interval& iv : base.iv[e]) {
      SheetPiece p;
      p.edge = e;
      Rat ya = iv.a == 0 ? vh[g.edges[e].u] : rng.grid(16, 2, 14);
      Rat yb = iv.b == 1 ? vh[g.edges[e].v] : rng.grid(16, 2, 14);
      p.bp.push_back({iv.a, ya});
      if (rng.coin() && iv.b - iv.a > Rat(1, 16))
        p.bp.push_back({(iv.a + iv.b) / 2, rng.grid(16, 2, 14)});
      p.bp.push_back({iv.b, yb});
      canonicalize_piece(p);
      s.pieces[e].push_back(std::move(p));
    }
  }
  return s;
}

// ── randomized separators (boustrophedon snakes with jitter) ────────

inline std::vector<Seg> random_arc_snake(Rng& rng, int k) {
  // k + 1 strictly increasing heights, staggered interior x's.
  std::vector<Rat> ys = rng.sorted_grid(k + 1, 64);
  std::vector<Rat> xs(k + 1);
  xs[0] = 0;
  xs[k] = 1;
  for (int j = 1; j < k; ++j) {
    Rat base = (j % 2 == 1) ? Rat(2, 3) : Rat(1, 3);
    xs[j] = base + Rat(j, 100) * ((j % 2 == 1) ? 1 : -1) + rng.grid(400, -1, 1);
  }
  std::vector<Seg> segs;
  for (int j = 0; j < k; ++j) {
    Seg s;
    s.edge = 0;
    if (xs[j] < xs[j + 1]) {
      s.t1 = xs[j]; s.y1 = ys[j]; s.t2 = xs[j + 1]; s.y2 = ys[j + 1];
    } else {
      s.t1 = xs[j + 1]; s.y1 = ys[j + 1]; s.t2 = xs[j]; s.y2 = ys[j];
    }
    segs.push_back(s);
  }
  return segs;
}

inline std::vector<Seg> random_triod_snake(Rng& rng) {
  Rat c = rng.grid(16, 6, 10);  // height at the center vertex
  Rat hi = c + rng.grid(64, 4, 8);
  Rat lo = c - rng.grid(64, 4, 8);
  Rat m = c + rng.grid(64, -5, 5);  // height at the far end of the snake
  std::vector<Seg> segs;
  segs.push_back({1, 0, c, 1, c});
  segs.push_back({2, 0, c, 1, c});
  segs.push_back({0, 0, c, Rat(5, 8) + rng.grid(200, -1, 1), hi});
  segs.push_back({0, Rat(3, 8) + rng.grid(200, -1, 1), lo, segs[2].t2, hi});
  segs.push_back({0, segs[3].t1, lo, 1, m});
  return segs;
}

// A random separator on an arc or a triod; always separates.
inline std::pair<Graph, std::vector<Seg>> random_separator(Rng& rng) {
  for (;;) {
    Graph g;
    std::vector<Seg> segs;
    if (rng.coin()) {
      g = make_arc();
      segs = random_arc_snake(rng, 2 * rng.pick(0, 2) + 1);
    } else {
      g = make_triod();
      segs = random_triod_snake(rng);
    }
    if (!arrangement_valid(g, segs)) continue;
    if (!label_faces(g, segs).separates) continue;
    return {g, segs};
  }
}

// ── parity oracle for separation ────────────────────────────────────

// Number of levels passing strictly above (x, t); the fiber of a
// straight set meets each level at most once.
inline int levels_above(const Graph& g, const std::vector<StraightSet>& levels,
                        const CylPoint& p) {
  int n = 0;
  for (const StraightSet& s : levels) {
    auto h = evaluate(g, s, p.p);
    if (h && *h > p.y) ++n;
  }
  return n;
}

// Independent separation verdict: every face meeting the floor has an
// odd number of levels above it, every face meeting the ceiling an
// even number, and no face meets both.
inline bool parity_separates(const Graph& g,
                             const std::vector<StraightSet>& levels,
                             bool* agree) {
  FaceLabels fl = label_faces(g, to_segments(g, levels));
  bool ok = true, consistent = true;
  for (int f = 0; f < fl.num_faces; ++f) {
    int n = levels_above(g, levels, fl.sample[f]);
    if (fl.bottom[f] && n % 2 == 0) consistent = false;
    if (fl.top[f] && n % 2 == 1) consistent = false;
    if (fl.bottom[f] && fl.top[f]) ok = false;
  }
  if (agree) *agree = consistent;
  return ok && consistent;
}

// ── exact tube containment of a stairwell in a separator tube ───────

// Max vertical distance from a sheet to the segments is piecewise
// linear in t; checking at all sheet and segment breakpoints is exact.
inline bool stairwell_in_tube(const Graph& g, const Stairwell& sw,
                              const std::vector<Seg>& segs, const Rat& radius) {
  for (const StraightSet& s : sw.levels)
    for (int e = 0; e < (int)g.edges.size(); ++e)
      for (const SheetPiece& p : s.pieces[e]) {
        std::vector<Rat> ts;
        for (const auto& [t, y] : p.bp) ts.push_back(t);
        for (const Seg& sg : segs)
          if (sg.edge == e) {
            if (sg.t1 > p.t_min() && sg.t1 < p.t_max()) ts.push_back(sg.t1);
            if (sg.t2 > p.t_min() && sg.t2 < p.t_max()) ts.push_back(sg.t2);
          }
        for (const Rat& t : ts) {
          CylPoint q{GraphPoint::on_edge(g, e, t), p.value_at(t)};
          if (!near_segments(g, segs, radius, q)) return false;
        }
      }
  return true;
}

// ── independent end-set oracle for straight preimages ───────────────

// φ of an F-point, computed from the edge map arithmetic only.
inline GraphPoint fold_image(const SimpleFold& f, const GraphPoint& p) {
  if (p.is_vertex()) return f.vmap[p.vertex];
  const FoldEdgeMap& m = f.emap[p.edge];
  return GraphPoint::on_edge(f.G, m.g_edge, m.a + p.t * (m.b - m.a));
}

// Base of (φ×id)⁻¹(S) over F, by direct per-edge interval arithmetic.
inline ClosedSet oracle_preimage_base(const SimpleFold& f,
                                      const StraightSet& s) {
  ClosedSet out = make_empty_set(f.F);
  for (int i = 0; i < (int)f.F.edges.size(); ++i) {
    const FoldEdgeMap& m = f.emap[i];
    for (const Interval& iv : s.base.iv[m.g_edge]) {
      Rat lo = rat_max(iv.a, m.a), hi = rat_min(iv.b, m.b);
      if (lo < hi)
        out.iv[i].push_back({(lo - m.a) / (m.b - m.a), (hi - m.a) / (m.b - m.a)});
      else if (lo == hi)
        out.isolated.insert(
            GraphPoint::on_edge(f.F, i, (lo - m.a) / (m.b - m.a)));
    }
  }
  for (int v = 0; v < f.F.num_vertices; ++v)
    if (contains(f.G, s.base, f.vmap[v])) out.vert[v] = 1;
  normalize(f.F, out);
  return out;
}

// End set of the preimage restricted to the given parts (empty =
// all), as boundary-of-projection points with heights read through φ.
inline CylPointSet oracle_preimage_ends(const SimpleFold& f,
                                        const StraightSet& s,
                                        const std::vector<int>& parts) {
  ClosedSet base = oracle_preimage_base(f, s);
  if (!parts.empty()) base = set_intersection(f.F, base, part_union(f, parts));
  CylPointSet out;
  for (const GraphPoint& p : boundary(f.F, base).pts) {
    auto h = evaluate(f.G, s, fold_image(f, p));
    if (h) out.insert({p, *h});
  }
  return out;
}

// ── grid oracle for δ-crookedness ───────────────────────────────────

// Level set of g at y as maximal closed intervals, found by scanning
// the 1/256 grid for hits and sign changes (exact solve per change);
// requires all breakpoints of g on the grid.
inline std::vector<std::pair<Rat, Rat>> oracle_level_set(
    const PLIntervalMap& g, const Rat& y) {
  const int N = 256;
  std::vector<Rat> pts;
  Rat prev = g.value_at(0);
  if (prev == y) pts.push_back(0);
  for (int k = 1; k <= N; ++k) {
    Rat x(k, N);
    Rat v = g.value_at(x);
    if ((prev < y && v > y) || (prev > y && v < y)) {
      Rat x0 = Rat(k - 1, N);
      pts.push_back(x0 + (y - prev) * (x - x0) / (v - prev));
    }
    if (v == y) pts.push_back(x);
    prev = v;
  }
  // Merge runs of consecutive grid hits into closed intervals.
  std::vector<std::pair<Rat, Rat>> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rat a = pts[i], b = pts[i];
    while (i + 1 < pts.size() && pts[i + 1] - b <= Rat(1, N) &&
           g.value_at((b + pts[i + 1]) / 2) == y) {
      b = pts[++i];
    }
    out.push_back({a, b});
  }
  return out;
}

// Does the union of closed intervals l meet the open interval (a, b)?
inline bool oracle_meets_open(const std::vector<std::pair<Rat, Rat>>& l,
                              const Rat& a, const Rat& b) {
  for (const auto& [u, v] : l)
    if (u == v ? (u > a && u < b) : (v > a && u < b)) return true;
  return false;
}

// Is there x2 < x3 in (x1, x4) with x2 in L3, x3 in L2?  The sorted
// interval list l3 has infimum lo over (x1, x4); x2 can be taken at lo
// (attained) or arbitrarily close above it, so the question reduces to
// whether l2 meets (lo, x4).
inline bool oracle_exists_pair(const std::vector<std::pair<Rat, Rat>>& l3,
                               const std::vector<std::pair<Rat, Rat>>& l2,
                               const Rat& x1, const Rat& x4) {
  for (const auto& [u3, v3] : l3) {
    if (u3 == v3 ? !(u3 > x1 && u3 < x4) : !(v3 > x1 && u3 < x4)) continue;
    Rat lo = u3 > x1 ? u3 : x1;
    return oracle_meets_open(l2, lo, x4);
  }
  return false;
}

// Quadruple condition on one net, from grid level sets, enumerating
// all candidate fiber points (not just component endpoints).
inline bool oracle_net_passes(const PLIntervalMap& g,
                              const std::vector<Rat>& net) {
  std::vector<Rat> ns = net;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<std::vector<std::pair<Rat, Rat>>> ls;
  for (const Rat& y : ns) ls.push_back(oracle_level_set(g, y));
  int n = (int)ns.size();
  auto endpoints = [](const std::vector<std::pair<Rat, Rat>>& l) {
    std::vector<Rat> xs;
    for (const auto& [a, b] : l) {
      xs.push_back(a);
      if (b != a) xs.push_back(b);
    }
    return xs;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          // Increasing (a,b,c,d) and decreasing (d,c,b,a) quadruples.
          for (int dir = 0; dir < 2; ++dir) {
            int i1 = dir ? d : a, i2 = dir ? c : b, i3 = dir ? b : c,
                i4 = dir ? a : d;
            for (const Rat& x1 : endpoints(ls[i1]))
              for (const Rat& x4 : endpoints(ls[i4])) {
                if (!(x1 < x4)) continue;
                if (!oracle_exists_pair(ls[i3], ls[i2], x1, x4)) return false;
              }
          }
        }
  return true;
}

// Oracle twin of is_delta_crooked: same candidate nets, grid checker.
inline bool oracle_is_crooked(const PLIntervalMap& g, const Rat& delta) {
  std::vector<std::vector<Rat>> nets;
  for (const Rat& step : {delta, Rat(delta / 2)}) {
    std::vector<Rat> net;
    for (Rat x = 0; x < 1; x += step) net.push_back(x);
    net.push_back(1);
    nets.push_back(std::move(net));
  }
  {
    std::vector<Rat> net;
    for (const Rat& y : critical_values(g)) {
      Rat q = y / delta + Rat(1, 2);
      Int fl = numerator(q) / denominator(q);
      Rat v = Rat(fl) * delta;
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      net.push_back(v);
    }
    std::sort(net.begin(), net.end());
    net.erase(std::unique(net.begin(), net.end()), net.end());
    if (is_delta_net(net, delta)) nets.push_back(std::move(net));
  }
  for (const auto& net : nets)
    if (oracle_net_passes(g, net)) return true;
  return false;
}

// Random onto PL map with breakpoints on the 1/64 grid.
inline PLIntervalMap random_plmap(Rng& rng) {
  for (;;) {
    int laps = rng.pick(2, 6);
    std::vector<Rat> xs = rng.sorted_grid(laps - 1, 64);
    xs.insert(xs.begin(), 0);
    xs.push_back(1);
    PLIntervalMap m;
    for (const Rat& x : xs) m.bp.push_back({x, rng.grid(64, 0, 64)});
    // Force onto by pinning one breakpoint to 0 and another to 1.
    int lo = rng.pick(0, laps);
    int hi = rng.pick(0, laps);
    if (lo == hi) continue;
    m.bp[lo].second = 0;
    m.bp[hi].second = 1;
    if (plmap_valid(m) && plmap_onto(m)) return m;
  }
}

}  // namespace plftest

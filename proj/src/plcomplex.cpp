#include "plf/plcomplex.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

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

}  // namespace

CylPoint seg_start(const Graph& g, const Seg& s) {
  return {GraphPoint::on_edge(g, s.edge, s.t1), s.y1};
}

CylPoint seg_end(const Graph& g, const Seg& s) {
  return {GraphPoint::on_edge(g, s.edge, s.t2), s.y2};
}

bool arrangement_valid(const Graph& g, const std::vector<Seg>& segs,
                       std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Seg& s = segs[i];
    if (s.edge < 0 || s.edge >= (int)g.edges.size())
      return fail("segment edge out of range");
    if (!(s.t1 < s.t2)) return fail("segment not increasing in t");
    if (s.t1 < 0 || s.t2 > 1) return fail("segment leaves edge square");
    if (s.y1 <= 0 || s.y1 >= 1 || s.y2 <= 0 || s.y2 >= 1)
      return fail("segment height not strictly inside (0,1)");
  }
  // Pairwise intersections only at shared endpoints (same square).
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Seg& a = segs[i];
      const Seg& b = segs[j];
      if (a.edge != b.edge) continue;
      Rat lo = rat_max(a.t1, b.t1);
      Rat hi = rat_min(a.t2, b.t2);
      if (lo > hi) continue;
      Rat da_lo = a.value_at(lo) - b.value_at(lo);
      Rat da_hi = a.value_at(hi) - b.value_at(hi);
      auto shared_endpoint = [&](const Rat& t, const Rat& y) {
        bool ea = (t == a.t1 && y == a.y1) || (t == a.t2 && y == a.y2);
        bool eb = (t == b.t1 && y == b.y1) || (t == b.t2 && y == b.y2);
        return ea && eb;
      };
      if (da_lo == 0 && da_hi == 0) {
        if (lo < hi) return fail("collinear overlapping segments");
        if (!shared_endpoint(lo, a.value_at(lo)))
          return fail("segments touch at a non-shared endpoint");
        continue;
      }
      if (da_lo == 0 || da_hi == 0) {
        Rat t = da_lo == 0 ? lo : hi;
        if (!shared_endpoint(t, a.value_at(t)))
          return fail("segments touch at a non-shared endpoint");
        continue;
      }
      if ((da_lo < 0) != (da_hi < 0)) {
        Rat t = lo + (hi - lo) * da_lo / (da_lo - da_hi);
        if (!shared_endpoint(t, a.value_at(t)))
          return fail("segments cross at a non-endpoint");
      }
    }
  }
  return true;
}

// ── face decomposition ──────────────────────────────────────────────

namespace {

struct Strip {
  Rat t0, t1;
  std::vector<int> spans;  // segment ids sorted bottom to top
  int band_base = 0;       // global node id of the lowest band
};

struct Decomp {
  std::vector<std::vector<Strip>> strips;  // per edge
  int num_bands = 0;

  // Open y-interval of band b of the strip at fiber t.
  std::pair<Rat, Rat> band_range(const std::vector<Seg>& segs,
                                 const Strip& st, int b, const Rat& t) const {
    Rat lo = b == 0 ? Rat(0) : segs[st.spans[b - 1]].value_at(t);
    Rat hi = b == (int)st.spans.size() ? Rat(1) : segs[st.spans[b]].value_at(t);
    return {lo, hi};
  }
};

Decomp decompose(const Graph& g, const std::vector<Seg>& segs) {
  Decomp d;
  d.strips.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<Rat> crit = {Rat(0), Rat(1)};
    for (const Seg& s : segs)
      if (s.edge == (int)e) {
        crit.push_back(s.t1);
        crit.push_back(s.t2);
      }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    for (std::size_t k = 0; k + 1 < crit.size(); ++k) {
      Strip st;
      st.t0 = crit[k];
      st.t1 = crit[k + 1];
      Rat mid = (st.t0 + st.t1) / 2;
      for (std::size_t i = 0; i < segs.size(); ++i)
        if (segs[i].edge == (int)e && segs[i].t1 <= st.t0 &&
            segs[i].t2 >= st.t1)
          st.spans.push_back((int)i);
      std::sort(st.spans.begin(), st.spans.end(), [&](int a, int b) {
        return segs[a].value_at(mid) < segs[b].value_at(mid);
      });
      st.band_base = d.num_bands;
      d.num_bands += (int)st.spans.size() + 1;
      d.strips[e].push_back(std::move(st));
    }
  }
  return d;
}

bool open_overlap(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
  return rat_max(a.first, b.first) < rat_min(a.second, b.second);
}

}  // namespace

FaceLabels label_faces(const Graph& g, const std::vector<Seg>& segs) {
  Decomp d = decompose(g, segs);

  // Vertex fiber slots.
  std::vector<std::vector<Rat>> yv(g.num_vertices);
  for (const Seg& s : segs) {
    if (s.t1 == 0) yv[g.edges[s.edge].u].push_back(s.y1);
    if (s.t2 == 1) yv[g.edges[s.edge].v].push_back(s.y2);
  }
  std::vector<int> slot_base(g.num_vertices);
  int num_slots = 0;
  for (int v = 0; v < g.num_vertices; ++v) {
    std::sort(yv[v].begin(), yv[v].end());
    yv[v].erase(std::unique(yv[v].begin(), yv[v].end()), yv[v].end());
    slot_base[v] = d.num_bands + num_slots;
    num_slots += (int)yv[v].size() + 1;
  }
  auto slot_range = [&](int v, int j) -> std::pair<Rat, Rat> {
    Rat lo = j == 0 ? Rat(0) : yv[v][j - 1];
    Rat hi = j == (int)yv[v].size() ? Rat(1) : yv[v][j];
    return {lo, hi};
  };

  Dsu dsu(d.num_bands + num_slots);

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& strips = d.strips[e];
    // Adjacent strips within the square.
    for (std::size_t k = 0; k + 1 < strips.size(); ++k) {
      const Strip& L = strips[k];
      const Strip& R = strips[k + 1];
      Rat tc = L.t1;
      for (int a = 0; a <= (int)L.spans.size(); ++a) {
        auto ra = d.band_range(segs, L, a, tc);
        for (int b = 0; b <= (int)R.spans.size(); ++b) {
          auto rb = d.band_range(segs, R, b, tc);
          if (open_overlap(ra, rb))
            dsu.unite(L.band_base + a, R.band_base + b);
        }
      }
    }
    // Vertex fibers at the two ends.
    for (int side = 0; side < 2; ++side) {
      const Strip& st = side == 0 ? strips.front() : strips.back();
      Rat tc = side == 0 ? Rat(0) : Rat(1);
      int v = side == 0 ? g.edges[e].u : g.edges[e].v;
      for (int a = 0; a <= (int)st.spans.size(); ++a) {
        auto ra = d.band_range(segs, st, a, tc);
        for (int j = 0; j <= (int)yv[v].size(); ++j) {
          if (open_overlap(ra, slot_range(v, j)))
            dsu.unite(st.band_base + a, slot_base[v] + j);
        }
      }
    }
  }

  FaceLabels out;
  std::vector<int> face_of(d.num_bands + num_slots, -1);
  auto face_id = [&](int node) {
    int r = dsu.find(node);
    if (face_of[r] < 0) {
      face_of[r] = out.num_faces++;
      out.bottom.push_back(0);
      out.top.push_back(0);
      out.sample.push_back({GraphPoint::at_vertex(0), Rat(0)});
    }
    return face_of[r];
  };
  // Deterministic face ids: sweep bands in order; record samples.
  std::vector<char> has_sample;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Strip& st : d.strips[e]) {
      Rat tm = (st.t0 + st.t1) / 2;
      for (int a = 0; a <= (int)st.spans.size(); ++a) {
        int f = face_id(st.band_base + a);
        if ((int)has_sample.size() < out.num_faces)
          has_sample.resize(out.num_faces, 0);
        if (!has_sample[f]) {
          auto r = d.band_range(segs, st, a, tm);
          out.sample[f] = {GraphPoint::on_edge(g, (int)e, tm),
                           (r.first + r.second) / 2};
          has_sample[f] = 1;
        }
        if (a == 0) out.bottom[f] = 1;
        if (a == (int)st.spans.size()) out.top[f] = 1;
      }
    }
  }
  // Per-segment side faces, from the first strip each segment spans.
  out.above.assign(segs.size(), -1);
  out.below.assign(segs.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Strip& st : d.strips[e]) {
      for (std::size_t r = 0; r < st.spans.size(); ++r) {
        int si = st.spans[r];
        if (out.below[si] < 0) {
          out.below[si] = face_id(st.band_base + (int)r);
          out.above[si] = face_id(st.band_base + (int)r + 1);
        }
      }
    }
  }
  out.separates = true;
  for (int f = 0; f < out.num_faces; ++f)
    if (out.bottom[f] && out.top[f]) out.separates = false;
  return out;
}

int count_above(const Graph& g, const std::vector<Seg>& segs,
                const CylPoint& p) {
  if (p.p.is_vertex()) {
    std::vector<Rat> ys;
    for (const Seg& s : segs) {
      if (s.t1 == 0 && g.edges[s.edge].u == p.p.vertex) ys.push_back(s.y1);
      if (s.t2 == 1 && g.edges[s.edge].v == p.p.vertex) ys.push_back(s.y2);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return (int)std::count_if(ys.begin(), ys.end(),
                              [&](const Rat& y) { return y > p.y; });
  }
  int n = 0;
  for (const Seg& s : segs) {
    if (s.edge != p.p.edge || s.t1 > p.p.t || s.t2 < p.p.t) continue;
    if (s.value_at(p.p.t) > p.y) ++n;
  }
  return n;
}

std::vector<Seg> irreducible_core(const Graph& g,
                                  const std::vector<Seg>& segs) {
  std::vector<Seg> cur = segs;
  bool use_bottom = true;
  int stable = 0;
  while (stable < 2) {
    FaceLabels fl = label_faces(g, cur);
    assert(fl.separates);
    std::vector<Seg> next;
    const std::vector<char>& lab = use_bottom ? fl.bottom : fl.top;
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (lab[fl.above[i]] != lab[fl.below[i]]) next.push_back(cur[i]);
    if (next.size() == cur.size())
      ++stable;
    else
      stable = 0;
    cur = std::move(next);
    use_bottom = !use_bottom;
  }
  assert(label_faces(g, cur).separates);
  return cur;
}

// ── arrangement points ──────────────────────────────────────────────

std::vector<ArrPoint> arrangement_points(const Graph& g,
                                         const std::vector<Seg>& segs) {
  std::map<CylPoint, std::vector<std::pair<int, int>>> m;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    m[seg_start(g, segs[i])].push_back({(int)i, 0});
    m[seg_end(g, segs[i])].push_back({(int)i, 1});
  }
  std::vector<ArrPoint> out;
  for (auto& [pt, ends] : m) out.push_back({pt, std::move(ends)});
  return out;
}

namespace {

// Direction class of an incident segment end at its arrangement
// point: for interior points the sign of dt; for vertex-fiber points
// the (edge, fiber side) the segment leaves through.
struct DirClass {
  int a, b;
  friend bool operator==(const DirClass&, const DirClass&) = default;
  friend bool operator<(const DirClass& x, const DirClass& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  }
};

DirClass direction_class(const Seg& s, int which, bool at_vertex) {
  if (!at_vertex) return {which == 0 ? 1 : -1, 0};
  return {s.edge, which == 0 ? 0 : 1};
}

}  // namespace

std::vector<ArrPoint> branch_points(const Graph& g,
                                    const std::vector<Seg>& segs) {
  std::vector<ArrPoint> out;
  for (ArrPoint& ap : arrangement_points(g, segs)) {
    if (ap.ends.size() < 3) continue;
    if (ap.at.p.is_vertex()) {
      // A point with at most one end per incident edge-end is a
      // single sheet crossing the vertex fiber, not a branch point.
      std::map<DirClass, int> cnt;
      bool doubled = false;
      for (auto [si, which] : ap.ends)
        if (++cnt[direction_class(segs[si], which, true)] > 1) doubled = true;
      if (!doubled) continue;
    }
    out.push_back(std::move(ap));
  }
  return out;
}

std::vector<ArrPoint> turning_points(const Graph& g,
                                     const std::vector<Seg>& segs) {
  std::vector<ArrPoint> out;
  for (ArrPoint& ap : arrangement_points(g, segs)) {
    if (ap.ends.size() != 2) continue;
    bool at_v = ap.at.p.is_vertex();
    DirClass c0 = direction_class(segs[ap.ends[0].first], ap.ends[0].second,
                                  at_v);
    DirClass c1 = direction_class(segs[ap.ends[1].first], ap.ends[1].second,
                                  at_v);
    if (c0 == c1) out.push_back(std::move(ap));
  }
  return out;
}

// ── branch point surgery ────────────────────────────────────────────

namespace {

struct IncEnd {
  int si;     // segment index
  int which;  // 0 = start is at the branch point
  Rat dt, dy;
};

// CCW angular order starting just above direction (1, 0).
bool angle_less(const IncEnd& a, const IncEnd& b) {
  auto half = [](const IncEnd& u) {
    return (u.dy > 0 || (u.dy == 0 && u.dt > 0)) ? 0 : 1;
  };
  if (half(a) != half(b)) return half(a) < half(b);
  return a.dt * b.dy - a.dy * b.dt > 0;
}

// One surgery step on the first branch point; nullopt on failure.
std::optional<std::vector<Seg>> surger_one(const Graph& g,
                                           const std::vector<Seg>& segs,
                                           const ArrPoint& bp,
                                           const Rat& max_shift) {
  if (bp.at.p.is_vertex()) return std::nullopt;
  int n = (int)bp.ends.size();
  if (n % 2 != 0) return std::nullopt;
  std::vector<IncEnd> dirs;
  for (auto [si, which] : bp.ends) {
    const Seg& s = segs[si];
    Rat dt = s.t2 - s.t1, dy = s.y2 - s.y1;
    if (which == 1) {
      dt = -dt;
      dy = -dy;
    }
    dirs.push_back({si, which, dt, dy});
  }
  std::sort(dirs.begin(), dirs.end(), angle_less);

  FaceLabels fl = label_faces(g, segs);
  // Sector i lies CCW between dirs[i] and dirs[i+1]; its face is the
  // side of segment i reached by a small CCW rotation from dirs[i].
  std::vector<char> sector_bottom(n);
  for (int i = 0; i < n; ++i) {
    int f = dirs[i].dt > 0 ? fl.above[dirs[i].si] : fl.below[dirs[i].si];
    int j = (i + 1) % n;
    int f2 = dirs[j].dt < 0 ? fl.above[dirs[j].si] : fl.below[dirs[j].si];
    if (f != f2) return std::nullopt;  // inconsistent local structure
    sector_bottom[i] = fl.bottom[f];
  }
  for (int i = 0; i < n; ++i)
    if (sector_bottom[i] == sector_bottom[(i + 1) % n])
      return std::nullopt;  // sectors must alternate

  int old_branch_count = (int)branch_points(g, segs).size();

  for (int pairing = 0; pairing < 2; ++pairing) {
    Rat f = Rat(1, 4);
    for (int attempt = 0; attempt < 40; ++attempt, f /= 2) {
      // Per-end truncation fraction, bounded by max_shift.
      std::vector<Rat> frac(n);
      for (int i = 0; i < n; ++i) {
        Rat m = rat_max(rat_abs(dirs[i].dt), rat_abs(dirs[i].dy));
        frac[i] = m > 0 ? rat_min(f, Rat(max_shift / m)) : f;
      }
      // Sectors kept as wedges: those matching the chosen pairing.
      // Break vertical chords by staggering one truncation.
      auto trunc_pt = [&](int i) -> std::pair<Rat, Rat> {
        const Seg& s = segs[dirs[i].si];
        Rat t0 = dirs[i].which == 0 ? s.t1 : s.t2;
        Rat y0 = dirs[i].which == 0 ? s.y1 : s.y2;
        return {t0 + frac[i] * dirs[i].dt, y0 + frac[i] * dirs[i].dy};
      };
      for (int i = 0; i < n; ++i) {
        if (sector_bottom[i] != (pairing == 0)) continue;
        int j = (i + 1) % n;
        if (trunc_pt(i).first == trunc_pt(j).first) frac[j] /= 2;
        if (trunc_pt(i).first == trunc_pt(j).first) return std::nullopt;
      }
      std::vector<Seg> cand;
      std::vector<char> incident(segs.size(), 0);
      for (int i = 0; i < n; ++i) incident[dirs[i].si] = 1;
      for (std::size_t i = 0; i < segs.size(); ++i)
        if (!incident[i]) cand.push_back(segs[i]);
      for (int i = 0; i < n; ++i) {
        const Seg& s = segs[dirs[i].si];
        auto [ta, ya] = trunc_pt(i);
        if (dirs[i].which == 0)
          cand.push_back({s.edge, ta, ya, s.t2, s.y2});
        else
          cand.push_back({s.edge, s.t1, s.y1, ta, ya});
      }
      bool bad = false;
      for (int i = 0; i < n && !bad; ++i) {
        if (sector_bottom[i] != (pairing == 0)) continue;
        int j = (i + 1) % n;
        auto [ta, ya] = trunc_pt(i);
        auto [tb, yb] = trunc_pt(j);
        if (ta == tb) {
          bad = true;
          break;
        }
        if (ta < tb)
          cand.push_back({segs[dirs[i].si].edge, ta, ya, tb, yb});
        else
          cand.push_back({segs[dirs[i].si].edge, tb, yb, ta, ya});
      }
      if (bad) continue;
      if (!arrangement_valid(g, cand)) continue;
      if (!label_faces(g, cand).separates) break;  // wrong pairing
      if ((int)branch_points(g, cand).size() >= old_branch_count) continue;
      return cand;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Seg>> remove_branch_points(
    const Graph& g, const std::vector<Seg>& segs, const Rat& max_shift) {
  std::vector<Seg> cur = segs;
  for (int guard = 0; guard < 1000; ++guard) {
    auto bps = branch_points(g, cur);
    if (bps.empty()) return cur;
    auto next = surger_one(g, cur, bps.front(), max_shift);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return std::nullopt;
}

// ── turning point perturbation ──────────────────────────────────────

namespace {

bool projections_ok(const Graph& g, const std::vector<Seg>& segs,
                    const FinitePointSet& forbidden) {
  auto tps = turning_points(g, segs);
  FinitePointSet seen;
  for (const ArrPoint& ap : tps) {
    GraphPoint x = ap.at.p;
    if (x.is_vertex()) return false;
    if (forbidden.contains(x)) return false;
    if (seen.contains(x)) return false;
    seen.insert(x);
  }
  return true;
}

}  // namespace

std::optional<std::vector<Seg>> nudge_generic(
    const Graph& g, const std::vector<Seg>& segs,
    const FinitePointSet& forbidden,
    const std::function<bool(const CylPoint&)>& within) {
  std::vector<Seg> cur = segs;
  bool sep0 = label_faces(g, cur).separates;
  for (int guard = 0; guard < 1000; ++guard) {
    if (projections_ok(g, cur, forbidden)) return cur;
    auto tps = turning_points(g, cur);
    // Find the first offending tip.
    FinitePointSet seen;
    const ArrPoint* bad = nullptr;
    for (const ArrPoint& ap : tps) {
      GraphPoint x = ap.at.p;
      if (x.is_vertex() || forbidden.contains(x) || seen.contains(x)) {
        bad = &ap;
        break;
      }
      seen.insert(x);
    }
    if (!bad) return std::nullopt;  // unreachable

    // Both ends leave in the same direction class; move the tip along
    // t, against that direction for interior tips, into the square
    // for vertex tips.
    const Seg& s0 = segs[0];
    (void)s0;
    int e;
    Rat t, y = bad->at.y;
    int dir;  // sign of the move applied to t
    if (bad->at.p.is_vertex()) {
      const Seg& s = cur[bad->ends[0].first];
      e = s.edge;
      int side = bad->ends[0].second == 0 ? 0 : 1;
      t = side == 0 ? Rat(0) : Rat(1);
      dir = side == 0 ? 1 : -1;  // into the square
    } else {
      e = bad->at.p.edge;
      t = bad->at.p.t;
      const Seg& s = cur[bad->ends[0].first];
      int seg_dir = bad->ends[0].second == 0 ? 1 : -1;
      (void)s;
      dir = -seg_dir;  // into the free side
    }

    bool moved = false;
    Rat eps(1, 16);
    for (int k = 0; k < 80 && !moved; ++k, eps /= 2) {
      Rat nt = t + dir * eps;
      if (nt <= 0 || nt >= 1) continue;
      std::vector<Seg> cand = cur;
      bool ok = true;
      for (auto [si, which] : bad->ends) {
        Seg& s = cand[si];
        if (which == 0) {
          s.t1 = nt;
          s.y1 = y;
          if (!(s.t1 < s.t2)) ok = false;
        } else {
          s.t2 = nt;
          s.y2 = y;
          if (!(s.t1 < s.t2)) ok = false;
        }
      }
      if (!ok) continue;
      GraphPoint np = GraphPoint::on_edge(g, e, nt);
      if (np.is_vertex() || forbidden.contains(np)) continue;
      bool clash = false;
      for (const ArrPoint& ap : tps)
        if (!(ap.at == bad->at) && ap.at.p == np) clash = true;
      if (clash) continue;
      if (!arrangement_valid(g, cand)) continue;
      if (label_faces(g, cand).separates != sep0) continue;
      if (within && !within({np, y})) continue;
      cur = std::move(cand);
      moved = true;
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

bool near_segments(const Graph& g, const std::vector<Seg>& segs,
                   const Rat& radius, const CylPoint& p) {
  if (p.p.is_vertex()) {
    for (const Seg& s : segs) {
      if (s.t1 == 0 && g.edges[s.edge].u == p.p.vertex &&
          rat_abs(p.y - s.y1) <= radius)
        return true;
      if (s.t2 == 1 && g.edges[s.edge].v == p.p.vertex &&
          rat_abs(p.y - s.y2) <= radius)
        return true;
    }
    return false;
  }
  for (const Seg& s : segs) {
    if (s.edge != p.p.edge || s.t1 > p.p.t || s.t2 < p.p.t) continue;
    if (rat_abs(p.y - s.value_at(p.p.t)) <= radius) return true;
  }
  return false;
}

}  // namespace plf

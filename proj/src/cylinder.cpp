#include "plf/cylinder.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace plf {

std::string to_string(const CylPoint& p) {
  std::ostringstream os;
  os << "(" << to_string(p.p) << "," << rat_to_string(p.y) << ")";
  return os.str();
}

bool CylPointSet::contains(const CylPoint& p) const {
  return std::binary_search(pts.begin(), pts.end(), p);
}

void CylPointSet::insert(const CylPoint& p) {
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || !(*it == p)) pts.insert(it, p);
}

FinitePointSet CylPointSet::project() const {
  FinitePointSet out;
  for (const CylPoint& p : pts) out.insert(p.p);
  return out;
}

CylPointSet cps_union(const CylPointSet& a, const CylPointSet& b) {
  CylPointSet r;
  std::set_union(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                 std::back_inserter(r.pts));
  return r;
}

CylPointSet cps_intersection(const CylPointSet& a, const CylPointSet& b) {
  CylPointSet r;
  std::set_intersection(a.pts.begin(), a.pts.end(), b.pts.begin(),
                        b.pts.end(), std::back_inserter(r.pts));
  return r;
}

CylPointSet cps_difference(const CylPointSet& a, const CylPointSet& b) {
  CylPointSet r;
  std::set_difference(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                      std::back_inserter(r.pts));
  return r;
}

bool cps_subset(const CylPointSet& a, const CylPointSet& b) {
  return std::includes(b.pts.begin(), b.pts.end(), a.pts.begin(),
                       a.pts.end());
}

bool cps_disjoint(const CylPointSet& a, const CylPointSet& b) {
  return cps_intersection(a, b).empty();
}

// ── SheetPiece ──────────────────────────────────────────────────────

Rat SheetPiece::value_at(const Rat& t) const {
  assert(!bp.empty() && t >= t_min() && t <= t_max());
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (t <= bp[i + 1].first) {
      const auto& [t0, y0] = bp[i];
      const auto& [t1, y1] = bp[i + 1];
      if (t0 == t1) return y0;
      return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
    }
  }
  return bp.back().second;
}

void canonicalize_piece(SheetPiece& p) {
  if (p.bp.size() <= 2) return;
  std::vector<std::pair<Rat, Rat>> out;
  out.push_back(p.bp.front());
  for (std::size_t i = 1; i + 1 < p.bp.size(); ++i) {
    const auto& [t0, y0] = out.back();
    const auto& [t1, y1] = p.bp[i];
    const auto& [t2, y2] = p.bp[i + 1];
    if ((y1 - y0) * (t2 - t0) == (y2 - y0) * (t1 - t0)) continue;
    out.push_back(p.bp[i]);
  }
  out.push_back(p.bp.back());
  p.bp = std::move(out);
}

SheetPiece piece_segment(const SheetPiece& p, const Rat& lo, const Rat& hi) {
  assert(lo >= p.t_min() && hi <= p.t_max() && lo <= hi);
  SheetPiece out;
  out.edge = p.edge;
  out.bp.push_back({lo, p.value_at(lo)});
  for (const auto& b : p.bp)
    if (b.first > lo && b.first < hi) out.bp.push_back(b);
  if (hi > lo) out.bp.push_back({hi, p.value_at(hi)});
  canonicalize_piece(out);
  return out;
}

// ── StraightSet ─────────────────────────────────────────────────────

StraightSet make_empty_straight(const Graph& g) {
  StraightSet s;
  s.base = make_empty_set(g);
  s.pieces.resize(g.edges.size());
  return s;
}

StraightSet make_constant_sheet(const Graph& g, const Rat& y) {
  StraightSet s;
  s.base = make_full_set(g);
  s.pieces.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    s.pieces[e].push_back({(int)e, {{0, y}, {1, y}}});
  return s;
}

bool straight_valid(const Graph& g, const StraightSet& s, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (s.base.iv.size() != g.edges.size() ||
      s.pieces.size() != g.edges.size())
    return fail("size mismatch with graph");
  if (!is_regular(g, s.base)) return fail("base is not regular");
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (s.pieces[e].size() != s.base.iv[e].size())
      return fail("piece count does not match base intervals");
    for (std::size_t i = 0; i < s.pieces[e].size(); ++i) {
      const SheetPiece& p = s.pieces[e][i];
      const Interval& it = s.base.iv[e][i];
      if (p.edge != (int)e) return fail("piece edge index mismatch");
      if (p.bp.size() < 2) return fail("piece needs at least 2 breakpoints");
      if (p.t_min() != it.a || p.t_max() != it.b)
        return fail("piece span does not match base interval");
      for (std::size_t k = 0; k < p.bp.size(); ++k) {
        if (k > 0 && !(p.bp[k - 1].first < p.bp[k].first))
          return fail("breakpoints not strictly increasing");
        if (p.bp[k].second < 0 || p.bp[k].second > 1)
          return fail("height outside [0,1]");
      }
    }
  }
  // π must be one-to-one on the closed set: pieces meeting a common
  // vertex must carry the same height there.
  std::vector<std::optional<Rat>> vh(g.num_vertices);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const SheetPiece& p : s.pieces[e]) {
      for (int side = 0; side < 2; ++side) {
        Rat t = side == 0 ? p.t_min() : p.t_max();
        if (t != 0 && t != 1) continue;
        int v = t == 0 ? g.edges[e].u : g.edges[e].v;
        Rat y = side == 0 ? p.bp.front().second : p.bp.back().second;
        if (vh[v] && *vh[v] != y)
          return fail("inconsistent heights at vertex " + std::to_string(v));
        vh[v] = y;
      }
    }
  }
  return true;
}

std::optional<Rat> evaluate(const Graph& g, const StraightSet& s,
                            const GraphPoint& p) {
  if (p.is_vertex()) {
    if (!s.base.vert[p.vertex]) return std::nullopt;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      for (const SheetPiece& pc : s.pieces[e]) {
        if (pc.t_min() == 0 && g.edges[e].u == p.vertex)
          return pc.bp.front().second;
        if (pc.t_max() == 1 && g.edges[e].v == p.vertex)
          return pc.bp.back().second;
      }
    }
    return std::nullopt;  // irregular base; no sheet reaches the vertex
  }
  for (std::size_t i = 0; i < s.base.iv[p.edge].size(); ++i) {
    const Interval& it = s.base.iv[p.edge][i];
    if (it.a <= p.t && p.t <= it.b)
      return s.pieces[p.edge][i].value_at(p.t);
  }
  return std::nullopt;
}

CylPointSet end_set(const Graph& g, const StraightSet& s) {
  CylPointSet out;
  for (const GraphPoint& p : boundary(g, s.base).pts) {
    auto y = evaluate(g, s, p);
    assert(y);
    out.insert({p, *y});
  }
  return out;
}

std::optional<StraightSet> restrict_straight(const Graph& g,
                                             const StraightSet& s,
                                             const ClosedSet& c) {
  ClosedSet nb = set_intersection(g, s.base, c);
  if (!is_regular(g, nb)) return std::nullopt;
  StraightSet out;
  out.base = nb;
  out.pieces.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Interval& it : nb.iv[e]) {
      // Find the old base interval containing it.
      const SheetPiece* src = nullptr;
      for (std::size_t i = 0; i < s.base.iv[e].size(); ++i) {
        const Interval& old = s.base.iv[e][i];
        if (old.a <= it.a && it.b <= old.b) {
          src = &s.pieces[e][i];
          break;
        }
      }
      if (!src) return std::nullopt;
      out.pieces[e].push_back(piece_segment(*src, it.a, it.b));
    }
  }
  if (!straight_valid(g, out)) return std::nullopt;
  return out;
}

std::optional<StraightSet> union_straight(const Graph& g,
                                          const std::vector<StraightSet>& v) {
  StraightSet out;
  out.base = make_empty_set(g);
  for (const StraightSet& s : v) out.base = set_union(g, out.base, s.base);
  if (!is_regular(g, out.base)) return std::nullopt;
  out.pieces.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const Interval& it : out.base.iv[e]) {
      // Contributing pieces overlapping this union interval.
      std::vector<const SheetPiece*> contrib;
      for (const StraightSet& s : v)
        for (std::size_t i = 0; i < s.base.iv[e].size(); ++i) {
          const Interval& o = s.base.iv[e][i];
          if (rat_max(o.a, it.a) <= rat_min(o.b, it.b))
            contrib.push_back(&s.pieces[e][i]);
        }
      // Merged breakpoint parameters within [it.a, it.b].
      std::vector<Rat> ts = {it.a, it.b};
      for (const SheetPiece* p : contrib)
        for (const auto& b : p->bp)
          if (b.first > it.a && b.first < it.b) ts.push_back(b.first);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      SheetPiece merged;
      merged.edge = (int)e;
      for (const Rat& t : ts) {
        std::optional<Rat> y;
        for (const SheetPiece* p : contrib) {
          if (t < p->t_min() || t > p->t_max()) continue;
          Rat py = p->value_at(t);
          if (y && *y != py) return std::nullopt;  // sheets disagree
          y = py;
        }
        if (!y) return std::nullopt;  // gap should be impossible
        merged.bp.push_back({t, *y});
      }
      // Every elementary segment must be covered by some single piece
      // (it is: per-edge piece spans union to the union base).
      for (std::size_t k = 0; k + 1 < merged.bp.size(); ++k) {
        Rat mid = (merged.bp[k].first + merged.bp[k + 1].first) / 2;
        bool cov = false;
        for (const SheetPiece* p : contrib)
          if (p->t_min() <= mid && mid <= p->t_max()) cov = true;
        if (!cov) return std::nullopt;
      }
      canonicalize_piece(merged);
      out.pieces[e].push_back(merged);
    }
  }
  if (!straight_valid(g, out)) return std::nullopt;
  return out;
}

bool sheets_disjoint(const Graph& g, const StraightSet& s,
                     const StraightSet& t, const CylPointSet& allowed) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const SheetPiece& ps : s.pieces[e]) {
      for (const SheetPiece& pt : t.pieces[e]) {
        Rat lo = rat_max(ps.t_min(), pt.t_min());
        Rat hi = rat_min(ps.t_max(), pt.t_max());
        if (lo > hi) continue;
        auto check_point = [&](const Rat& x) {
          Rat ys = ps.value_at(x);
          if (ys != pt.value_at(x)) return true;
          CylPoint cp{GraphPoint::on_edge(g, (int)e, x), ys};
          return allowed.contains(cp);
        };
        if (lo == hi) {
          if (!check_point(lo)) return false;
          continue;
        }
        std::vector<Rat> ts = {lo, hi};
        for (const SheetPiece* p : {&ps, &pt})
          for (const auto& b : p->bp)
            if (b.first > lo && b.first < hi) ts.push_back(b.first);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
          Rat x0 = ts[k], x1 = ts[k + 1];
          Rat d0 = ps.value_at(x0) - pt.value_at(x0);
          Rat d1 = ps.value_at(x1) - pt.value_at(x1);
          if (d0 == 0 && d1 == 0) return false;  // shared sub-segment
          if (d0 == 0 && !check_point(x0)) return false;
          if (d1 == 0 && !check_point(x1)) return false;
          if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
            Rat x = x0 + (x1 - x0) * d0 / (d0 - d1);
            if (!check_point(x)) return false;
          }
        }
      }
    }
  }
  return true;
}

bool tube_contains(const Graph& g, const Tube& tube, const CylPoint& p) {
  for (const StraightSet& s : tube.center) {
    auto h = evaluate(g, s, p.p);
    if (h && rat_abs(p.y - *h) <= tube.radius) return true;
  }
  return false;
}

}  // namespace plf

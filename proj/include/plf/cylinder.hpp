#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plf/regular.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// The cylinder G × [0,1].  A point is a graph point plus a height.
// ════════════════════════════════════════════════════════════════════

struct CylPoint {
  GraphPoint p;
  Rat y;
  friend bool operator==(const CylPoint& a, const CylPoint& b) {
    return a.p == b.p && a.y == b.y;
  }
  friend std::strong_ordering operator<=>(const CylPoint& a,
                                          const CylPoint& b) {
    if (auto c = a.p <=> b.p; c != std::strong_ordering::equal) return c;
    if (a.y < b.y) return std::strong_ordering::less;
    if (b.y < a.y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

std::string to_string(const CylPoint& p);

struct CylPointSet {
  std::vector<CylPoint> pts;  // sorted, unique

  bool empty() const { return pts.empty(); }
  std::size_t size() const { return pts.size(); }
  bool contains(const CylPoint& p) const;
  void insert(const CylPoint& p);
  // Projection to the graph.
  FinitePointSet project() const;

  friend bool operator==(const CylPointSet&, const CylPointSet&) = default;
};

CylPointSet cps_union(const CylPointSet& a, const CylPointSet& b);
CylPointSet cps_intersection(const CylPointSet& a, const CylPointSet& b);
CylPointSet cps_difference(const CylPointSet& a, const CylPointSet& b);
bool cps_subset(const CylPointSet& a, const CylPointSet& b);
bool cps_disjoint(const CylPointSet& a, const CylPointSet& b);

// ════════════════════════════════════════════════════════════════════
// StraightSet: a closed set S in G × [0,1] on which the projection π
// is one-to-one and whose projection is a regular set — i.e. the
// graph of a piecewise-linear partial section of π.  Stored as one PL
// piece per base interval.
// ════════════════════════════════════════════════════════════════════

struct SheetPiece {
  int edge = -1;
  // Breakpoints (t, y): t strictly increasing, spanning exactly the
  // matching base interval; heights in [0,1].
  std::vector<std::pair<Rat, Rat>> bp;

  Rat t_min() const { return bp.front().first; }
  Rat t_max() const { return bp.back().first; }
  Rat value_at(const Rat& t) const;  // t within [t_min, t_max]

  friend bool operator==(const SheetPiece&, const SheetPiece&) = default;
};

// Remove breakpoints lying on the segment between their neighbours.
void canonicalize_piece(SheetPiece& p);
// Restriction of p to [lo, hi] ⊆ [t_min, t_max].
SheetPiece piece_segment(const SheetPiece& p, const Rat& lo, const Rat& hi);

struct StraightSet {
  ClosedSet base;  // π(S); must be regular
  // pieces[e]: one piece per base.iv[e] interval, same order.
  std::vector<std::vector<SheetPiece>> pieces;

  bool empty() const { return base.empty(); }
  friend bool operator==(const StraightSet&, const StraightSet&) = default;
};

StraightSet make_empty_straight(const Graph& g);
// Single full-width sheet at constant height y.
StraightSet make_constant_sheet(const Graph& g, const Rat& y);

// Structural validity: base regular, piece spans match base intervals,
// heights in [0,1], and all pieces meeting a common vertex agree there
// (π must be one-to-one on S, which is a closed set).
bool straight_valid(const Graph& g, const StraightSet& s,
                    std::string* why = nullptr);

// Height over p, if p is in the base.
std::optional<Rat> evaluate(const Graph& g, const StraightSet& s,
                            const GraphPoint& p);

// End set E(S) = S ∩ π⁻¹(∂π(S)).
CylPointSet end_set(const Graph& g, const StraightSet& s);

// S ∩ π⁻¹(C).  The intersection base ∩ C must be regular (no isolated
// points); returns nullopt otherwise.
std::optional<StraightSet> restrict_straight(const Graph& g,
                                             const StraightSet& s,
                                             const ClosedSet& c);

// Union of several straight sets.  Valid only when they agree exactly
// wherever their bases overlap; returns nullopt otherwise (including
// when the union base is irregular).
std::optional<StraightSet> union_straight(const Graph& g,
                                          const std::vector<StraightSet>& v);

// True iff S ∩ T ⊆ allowed (as point sets in the cylinder).  Any
// shared sub-segment of positive length fails.
bool sheets_disjoint(const Graph& g, const StraightSet& s,
                     const StraightSet& t, const CylPointSet& allowed);

// ── tubes ───────────────────────────────────────────────────────────
// Vertical closed neighbourhood of a union of straight sets:
// T = { (x, y) : |y - h(x)| <= radius for some sheet height h(x) }.
struct Tube {
  std::vector<StraightSet> center;
  Rat radius = 0;
};

bool tube_contains(const Graph& g, const Tube& tube, const CylPoint& p);

}  // namespace plf

#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plf/cylinder.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Straight-line segment arrangements in G × [0,1].  A separator is a
// finite set of segments, each contained in a single edge square,
// with pairwise intersections only at shared endpoints, heights
// strictly inside (0,1), and no vertical segments.
// ════════════════════════════════════════════════════════════════════

struct Seg {
  int edge = -1;
  Rat t1, y1, t2, y2;  // t1 < t2

  Rat value_at(const Rat& t) const {
    return y1 + (y2 - y1) * (t - t1) / (t2 - t1);
  }
  friend bool operator==(const Seg&, const Seg&) = default;
};

CylPoint seg_start(const Graph& g, const Seg& s);
CylPoint seg_end(const Graph& g, const Seg& s);

// Structural validity as described above.
bool arrangement_valid(const Graph& g, const std::vector<Seg>& segs,
                       std::string* why = nullptr);

// ── face decomposition and reachability ─────────────────────────────

struct FaceLabels {
  int num_faces = 0;
  std::vector<char> bottom;  // face touches G × {0}
  std::vector<char> top;     // face touches G × {1}
  std::vector<int> above;    // per segment: face id on the +y side
  std::vector<int> below;    // per segment: face id on the -y side
  std::vector<CylPoint> sample;  // one interior point per face
  bool separates = false;    // no face is both bottom and top
};

FaceLabels label_faces(const Graph& g, const std::vector<Seg>& segs);

// Number of segments strictly above p on its fiber (p off all
// segments).  Used by the independent parity cross-check.
int count_above(const Graph& g, const std::vector<Seg>& segs,
                const CylPoint& p);

// ── reduction to an irreducible separator ───────────────────────────
// Alternately discard segments that do not bound the bottom-reachable
// region, then the top-reachable region, until stable.  Requires the
// input to separate; the result separates and every segment is
// essential.
std::vector<Seg> irreducible_core(const Graph& g,
                                  const std::vector<Seg>& segs);

// ── arrangement points ──────────────────────────────────────────────

struct ArrPoint {
  CylPoint at;
  // Incident segment ends: (segment index, 0 = start / 1 = end).
  std::vector<std::pair<int, int>> ends;
};

std::vector<ArrPoint> arrangement_points(const Graph& g,
                                         const std::vector<Seg>& segs);

// Degree >= 3 points.
std::vector<ArrPoint> branch_points(const Graph& g,
                                    const std::vector<Seg>& segs);

// Degree-2 points where both incident ends leave in the same
// direction class (local extremum of the projection).
std::vector<ArrPoint> turning_points(const Graph& g,
                                     const std::vector<Seg>& segs);

// ── surgery ─────────────────────────────────────────────────────────

// Replace every branch point (which must be interior to an edge
// square with an even number of incident ends) by a family of wedges
// chosen so the result still separates.  Truncation distance is
// bounded by max_shift.  Returns nullopt on malformed input (branch
// point on a vertex fiber, odd degree, or no working pairing).
std::optional<std::vector<Seg>> remove_branch_points(
    const Graph& g, const std::vector<Seg>& segs, const Rat& max_shift);

// Perturb turning points until their projections are pairwise
// distinct, avoid all graph vertices and the given forbidden set.
// Separation is re-verified after each move; moved points must
// satisfy `within` when given.  Returns nullopt if no admissible
// shift exists.
std::optional<std::vector<Seg>> nudge_generic(
    const Graph& g, const std::vector<Seg>& segs,
    const FinitePointSet& forbidden,
    const std::function<bool(const CylPoint&)>& within = {});

// True iff p is within vertical distance `radius` of some segment.
bool near_segments(const Graph& g, const std::vector<Seg>& segs,
                   const Rat& radius, const CylPoint& p);

}  // namespace plf

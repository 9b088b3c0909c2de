#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/graph.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// ClosedSet: exact representation of a closed piecewise-linear subset
// of a graph: per-edge maximal closed intervals, explicit vertex
// membership, and isolated interior points.  A set is *regular* when
// it has no isolated points (every component is non-degenerate).
// ════════════════════════════════════════════════════════════════════

struct Interval {
  Rat a, b;  // 0 <= a <= b <= 1 (closed [a,b])
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ClosedSet {
  // iv[e]: sorted, pairwise non-touching, non-degenerate intervals.
  std::vector<std::vector<Interval>> iv;
  // vert[v]: vertex membership (implied by any interval touching the
  // corresponding edge end; may also be set on its own).
  std::vector<char> vert;
  // Isolated interior points (edge-interior only; isolated vertices
  // are represented by vert[v] without any touching interval).
  FinitePointSet isolated;

  bool empty() const;
  friend bool operator==(const ClosedSet&, const ClosedSet&) = default;
};

ClosedSet make_empty_set(const Graph& g);
ClosedSet make_full_set(const Graph& g);
// Build from raw interval list (may be unsorted/overlapping/degenerate).
ClosedSet make_set(const Graph& g,
                   const std::vector<std::pair<int, Interval>>& raw);

// Canonicalize in place: merge intervals, promote end-touching
// intervals to vertex membership, drop covered isolated points.
void normalize(const Graph& g, ClosedSet& s);

bool contains(const Graph& g, const ClosedSet& s, const GraphPoint& p);
bool set_subset(const Graph& g, const ClosedSet& a, const ClosedSet& b);

ClosedSet set_union(const Graph& g, const ClosedSet& a, const ClosedSet& b);
ClosedSet set_intersection(const Graph& g, const ClosedSet& a,
                           const ClosedSet& b);
// Closure of a \ b.
ClosedSet closure_of_difference(const Graph& g, const ClosedSet& a,
                                const ClosedSet& b);

// True iff the set is closed-with-non-degenerate-components, i.e. it
// has no isolated interior points and no isolated vertices.
bool is_regular(const Graph& g, const ClosedSet& s);

// Topological boundary (finite for regular sets; requires regular).
FinitePointSet boundary(const Graph& g, const ClosedSet& s);

// Connected components (requires regular input).
std::vector<ClosedSet> components(const Graph& g, const ClosedSet& s);

// ── complement components ───────────────────────────────────────────
// A connected component of G \ A (A regular) or of G \ B (B finite).
struct OpenPiece {
  int edge;
  Rat a, b;  // relatively open in the edge; ends at 0/1 reach vertices
};
struct OpenComponent {
  std::vector<OpenPiece> pieces;
  std::vector<int> vertices;  // vertices interior to the component
  FinitePointSet bdry;        // boundary points (subset of ∂A resp. B)
};

std::vector<OpenComponent> complement_components(const Graph& g,
                                                 const ClosedSet& a);

// Components of G \ B for a finite point set B.
std::vector<OpenComponent> complement_of_points(const Graph& g,
                                                const FinitePointSet& b);

bool open_component_meets(const Graph& g, const OpenComponent& c,
                          const ClosedSet& a);
bool open_component_contains(const Graph& g, const OpenComponent& c,
                             const GraphPoint& p);

// σ-calculus ─────────────────────────────────────────────────────────
// True iff for each component C of G \ A, ∂C ⊆ B or ∂C ∩ B = ∅.
// Precondition B ⊆ boundary(A) is checked; violation -> nullopt.
std::optional<bool> has_consistent_complement(const Graph& g,
                                              const ClosedSet& a,
                                              const FinitePointSet& b);

// σ_B(A): closure of the union of all components of G \ B meeting A.
ClosedSet side_of(const Graph& g, const ClosedSet& a,
                  const FinitePointSet& b);

// Largest radius r (in edge parameter) such that a and b agree on the
// union of open balls of radius r around the points of c; nullopt if
// they differ arbitrarily close to c.
std::optional<Rat> agreement_radius(const Graph& g, const ClosedSet& a,
                                    const ClosedSet& b,
                                    const FinitePointSet& c);

}  // namespace plf

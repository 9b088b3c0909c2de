#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/cylinder.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Simple fold: a graph F = F1 ∪ F2 ∪ F3 with a map φ : F → G such
// that φ restricted to each part is a homeomorphism onto a regular
// subset G_i of G, G1 ∪ G3 = G, G2 = G1 ∩ G3, the closures of
// G1 ∖ G2 and G3 ∖ G2 are disjoint, ∂G1 = φ(F1 ∩ F2),
// ∂G3 = φ(F2 ∩ F3) and F1 ∩ F3 = ∅.
//
// F is realized concretely as the quotient of three disjoint copies
// of G1, G2, G3 glued along ∂G1 (copies 1,2) and ∂G3 (copies 2,3).
// Each F-edge maps affinely and orientation-preservingly onto a
// parameter range of a single G-edge.
// ════════════════════════════════════════════════════════════════════

struct FoldEdgeMap {
  int g_edge = -1;
  Rat a, b;  // F-edge [0,1] maps onto [a,b] of g_edge, a < b
};

struct SimpleFold {
  Graph G, F;
  ClosedSet G1, G2, G3;          // subsets of G
  ClosedSet F1, F2, F3;          // subsets of F (unions of whole edges)
  std::vector<FoldEdgeMap> emap;  // per F-edge
  std::vector<int> part;          // per F-edge: 1, 2 or 3
  std::vector<GraphPoint> vmap;   // per F-vertex: its φ-image in G
};

// ── set-level axioms ────────────────────────────────────────────────
// Check the subset triple (G1, G2, G3); on failure *axiom names the
// first violated one ("F1", "F2", "F3").  G2 may be given as any
// regular set with G2 ⊆ G1 ∩ G3; the disjoint-closure axiom then
// forces equality, which is checked as part of "F2".
bool validate_fold_sets(const Graph& g, const ClosedSet& g1,
                        const ClosedSet& g2, const ClosedSet& g3,
                        std::string* axiom = nullptr);

// Construct the quotient F and φ.  Returns nullopt when the set
// axioms fail (reason in *why).
std::optional<SimpleFold> build_fold(const Graph& g, const ClosedSet& g1,
                                     const ClosedSet& g2,
                                     const ClosedSet& g3,
                                     std::string* why = nullptr);

// Full structural validation of an assembled fold: the set axioms,
// the homeomorphism and boundary conditions, and the standard
// consequences (boundary identities, finiteness of F1 ∩ F2 and
// F2 ∩ F3, the separation property of ∂F1 and ∂F3, and local
// openness of φ off the part boundaries).
bool validate_fold(const SimpleFold& f, std::string* why = nullptr);

// ── pocket construction ─────────────────────────────────────────────
// From a regular non-empty A ⊆ G (G connected) whose boundary splits
// as B1 ⊔ B2 with A consistent rel B1: builds the fold with
// G1 = σ_B1(A), G2 = A, G3 = σ_B2(A).  Consistency rel B2 follows
// and is verified.  A = G yields G1 = G2 = G3 = G.
std::optional<SimpleFold> fold_from_pocket(const Graph& g, const ClosedSet& a,
                                           const FinitePointSet& b1,
                                           const FinitePointSet& b2,
                                           std::string* why = nullptr);

// ── the map φ and its companions ────────────────────────────────────

GraphPoint push_point(const SimpleFold& f, const GraphPoint& p);
ClosedSet image_of(const SimpleFold& f, const ClosedSet& s);      // φ(S)
ClosedSet preimage_of(const SimpleFold& f, const ClosedSet& s);   // φ⁻¹(S)
FinitePointSet preimage_points(const SimpleFold& f,
                               const FinitePointSet& s);
CylPointSet preimage_cyl(const SimpleFold& f, const CylPointSet& s);

// F_i ∩ F_j as a finite point set (nullopt if not finite).
std::optional<FinitePointSet> closed_to_finite(const Graph& g,
                                               const ClosedSet& s);

// (φ × id)⁻¹ of a straight set over G, a straight set over F.
StraightSet pullback_straight(const SimpleFold& f, const StraightSet& s);

// Pullback intersected with (F_parts)×[0,1]; parts is a subset of
// {1,2,3}.  nullopt when the restricted base is irregular.
std::optional<StraightSet> pullback_in_parts(const SimpleFold& f,
                                             const StraightSet& s,
                                             const std::vector<int>& parts);

ClosedSet part_union(const SimpleFold& f, const std::vector<int>& parts);

// ── straight preimage end-set formulas ──────────────────────────────
// Hypothesis for the end-set identities: ∂π(S) ∩ ∂φ(F2) = ∅, or
// φ(F2) coincides with π(S) on a neighbourhood of their common
// boundary points.
bool straight_preimage_hypothesis(const SimpleFold& f, const StraightSet& s);

// Predicted E((φ×id)⁻¹(S)) = (φ×id)⁻¹(E(S)) ∖ (∂F2)×[0,1].
CylPointSet predicted_ends_full(const SimpleFold& f, const StraightSet& s);

// Predicted E((φ×id)⁻¹(S) ∩ (F1 ∪ F2)×[0,1]) =
//   ((φ×id)⁻¹(E(S)) ∩ (F1∪F2)×[0,1] ∖ (∂F1)×[0,1])
//   ∪ (S'' ∩ (∂F3)×[0,1]).
CylPointSet predicted_ends_front(const SimpleFold& f, const StraightSet& s);

// ── reduction to a connected domain ─────────────────────────────────

struct FoldReduction {
  SimpleFold fold;
  std::vector<int> edge_map;    // old F-edge -> new F-edge or -1
  std::vector<int> vertex_map;  // old F-vertex -> new F-vertex or -1
};

// Connected components of F (each a union of whole edges).
std::vector<ClosedSet> fold_components(const SimpleFold& f);

// Restrict the fold to one component C of F (φ(C) must be all of G,
// which holds whenever φ(C) meets both ∂G1 and ∂G3 and G is
// connected); the parts may shrink.  Validates the result.
std::optional<FoldReduction> reduce_to_component(const SimpleFold& f,
                                                 const ClosedSet& c,
                                                 std::string* why = nullptr);

// Transport a straight set over the old F to the reduced F.
StraightSet transport_straight(const FoldReduction& r, const Graph& old_f,
                               const StraightSet& s);
CylPointSet transport_cyl(const FoldReduction& r, const Graph& old_f,
                          const CylPointSet& s);

}  // namespace plf

#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/plcomplex.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Stairwell: straight sets S_1, ..., S_k (k >= 1) in G × [0,1] with
//   (S1) each S_i non-empty and straight;
//   (S2) E(S_i) = α_i ⊔ β_i with α_1 = ∅ = β_k and β_i = α_{i+1};
//   (S3) π(S_i) and π(S_{i+1}) agree near π(β_i);
//   (S4) π(S_i) consistent rel π(α_i) and rel π(β_i);
//   (S5) ⟨π(α_2), ..., π(α_k)⟩ generic.
// Consecutive levels meet exactly in β_i; non-consecutive levels are
// disjoint.  Levels are numbered from the bottom.
// ════════════════════════════════════════════════════════════════════

struct Stairwell {
  Graph g;
  std::vector<StraightSet> levels;   // S_1 .. S_k
  std::vector<CylPointSet> alphas;   // α_1 .. α_k
  std::vector<CylPointSet> betas;    // β_1 .. β_k

  int height() const { return (int)levels.size(); }
};

bool validate_stairwell(const Stairwell& sw, std::string* why = nullptr);

// ════════════════════════════════════════════════════════════════════
// Broken stairwell: a stairwell whose level i0 (the pit) has an extra
// end set γ, together with a pocket pair P1 ⊆ P2:
//   (S1'..S5') the stairwell conditions, with E(S_{i0}) = α ⊔ β ⊔ γ,
//   E(P2) = E(P1) ⊔ γ, π(P1)/π(P2) agreeing near π(E(P1)),
//   π(P2)/π(S_{i0}) agreeing near π(γ), the consistency conditions,
//   and the extended family generic;
//   (S6') π(α_{i0}) ∩ π(P1 ∪ P2) = ∅.
// ════════════════════════════════════════════════════════════════════

struct BrokenStairwell {
  Stairwell stairs;
  int pit = 1;  // i0, 1-based
  StraightSet p1, p2;
  CylPointSet gamma;    // γ_{i0}
  CylPointSet ends_p1;  // E(P1)
};

bool validate_broken(const BrokenStairwell& b, std::string* why = nullptr);

// ── conversions and separation ──────────────────────────────────────

// All linear pieces of the sheets as an arrangement (sheets sharing
// only isolated points yield a valid arrangement).
std::vector<Seg> to_segments(const Graph& g,
                             const std::vector<StraightSet>& sheets);

// Flood-fill separation check of the union of the sheets.
bool separates_check(const Graph& g, const std::vector<StraightSet>& sheets);

// Assemble a straight set from loose sheet pieces (merging pieces
// that touch with matching heights).  nullopt if the result is not a
// valid straight set.
std::optional<StraightSet> assemble_level(const Graph& g,
                                          std::vector<SheetPiece> pieces);

// ── stairwell extraction ────────────────────────────────────────────
// From a separator: reduce to an irreducible core, remove branch
// points, perturb turning points to generic position, cut the graph
// into arcs each containing at most one turning point projection, and
// assign levels by fiber rank, inserting zig-zags where a wedge
// lowers the fiber count.  All new material stays within vertical
// distance tube_radius of the input separator.
std::optional<Stairwell> from_separator(const Graph& g,
                                        const std::vector<Seg>& segs,
                                        const Rat& tube_radius,
                                        std::string* why = nullptr);

}  // namespace plf

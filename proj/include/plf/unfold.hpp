#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/fold.hpp"
#include "plf/stairwell.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// The unfolding engine: iteratively reduce a stairwell to height 1 by
// simple folds.  One round trades a stairwell of height k >= 3 for a
// broken stairwell of height k - 2 with the pit at level 1; each
// unfold step then moves the pit up one level, pulling everything
// back over a simple fold, until the pit passes the top and the
// structure is a plain stairwell again.
// ════════════════════════════════════════════════════════════════════

// Height k >= 3 stairwell -> broken stairwell of height k - 2 on the
// same graph: the pit is the old level 3, the pocket pair is the old
// levels 1 and 2, and γ is the old α_3.
std::optional<BrokenStairwell> reduce_height(const Stairwell& sw,
                                             std::string* why = nullptr);

enum class UnfoldSignal {
  Step,              // one fold applied; `step` holds the result
  AlreadyStairwell,  // γ = ∅: the input is a plain stairwell
  PitAlone,          // E(P1) = ∅: P1 alone is a height-1 stairwell
  Error,
};

struct UnfoldStep {
  SimpleFold fold;       // φ : F -> G, restricted to a connected F
  BrokenStairwell next;  // over F, pit one level higher...
  std::optional<Stairwell> finished;  // ...or, if the pit was at the
                                      // top, a plain stairwell over F
};

struct UnfoldOutcome {
  UnfoldSignal signal = UnfoldSignal::Error;
  std::optional<UnfoldStep> step;     // for Step
  std::optional<Stairwell> done;      // for AlreadyStairwell / PitAlone
  std::string message;
};

// One unfold step.  Requires the graph connected and the broken
// stairwell valid.
UnfoldOutcome unfold_once(const BrokenStairwell& b);

// ── the full pipeline ───────────────────────────────────────────────

struct LiftReport {
  // Folds in application order: folds[0] maps its domain onto the
  // original graph, folds[i] onto the domain of folds[i-1].
  std::vector<SimpleFold> folds;
  Stairwell result;  // height 1, over the last domain
  int fold_bound = 0;  // a-priori bound 2 + 4 + ... + (k0 - 1)
  std::vector<std::string> trace;
};

std::optional<LiftReport> reduce_to_height_one(const Stairwell& sw,
                                               std::string* why = nullptr);

// Push a point of the last domain through the whole fold chain down
// to the original graph.
CylPoint push_through(const std::vector<SimpleFold>& folds, const CylPoint& p);

// About n sample points spread over the sheet.
std::vector<CylPoint> sample_section(const Graph& g, const StraightSet& s,
                                     int n);

}  // namespace plf

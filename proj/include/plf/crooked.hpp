#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/rational.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Piecewise-linear self-maps of [0,1] and the δ-crookedness check: g
// is δ-crooked when there is a finite δ-net F such that for every
// strictly monotone y1,y2,y3,y4 in F and every x1 < x4 with
// g(x1) = y1, g(x4) = y4 there are x1 < x2 < x3 < x4 with
// g(x2) = y3, g(x3) = y2.
// ════════════════════════════════════════════════════════════════════

struct PLIntervalMap {
  // (x, y) with x strictly increasing from 0 to 1, y in [0,1].
  std::vector<std::pair<Rat, Rat>> bp;

  Rat value_at(const Rat& x) const;
  friend bool operator==(const PLIntervalMap&, const PLIntervalMap&) = default;
};

bool plmap_valid(const PLIntervalMap& g, std::string* why = nullptr);
bool plmap_onto(const PLIntervalMap& g);  // image is exactly [0,1]

PLIntervalMap plmap_identity();
PLIntervalMap plmap_tent();  // x -> 1 - |2x - 1|

// Exact composition f ∘ g.
PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g);

// Replace every monotone lap [a,b] -> [c,d] by the three-lap pattern
// c -> c + 2/3 (d-c) -> c + 1/3 (d-c) -> d at equal x-subdivision.
PLIntervalMap crooked_refine(const PLIntervalMap& g);

// Values of g at its local extrema (including the endpoints).
std::vector<Rat> critical_values(const PLIntervalMap& g);

// Level set {x : g(x) = y} as maximal closed intervals (possibly
// degenerate), sorted.
std::vector<std::pair<Rat, Rat>> level_set(const PLIntervalMap& g,
                                           const Rat& y);

// True iff every point of [0,1] is within delta of the (sorted) net.
bool is_delta_net(const std::vector<Rat>& net, const Rat& delta);

struct CrookednessCertificate {
  Rat delta;
  std::vector<Rat> net;  // the certifying net when verified
  bool verified = false;
};

struct CrookedCounterexample {
  Rat y1, y2, y3, y4, x1, x4;
};

// The quadruple condition for one candidate net.  The serial variant
// is the reference implementation for the parallel one.
bool net_passes(const PLIntervalMap& g, const std::vector<Rat>& net,
                CrookedCounterexample* cex = nullptr);
bool net_passes_serial(const PLIntervalMap& g, const std::vector<Rat>& net,
                       CrookedCounterexample* cex = nullptr);

// Tries the uniform δ- and δ/2-grids and the rounded critical-value
// net.  verified=false means "not verified with the tried nets".
// nullopt when g is not onto (precondition).
std::optional<CrookednessCertificate> is_delta_crooked(
    const PLIntervalMap& g, const Rat& delta,
    CrookedCounterexample* cex = nullptr);

// Inverse-limit chain condition: pass[n-1][k-1] records whether
// g_k ∘ ... ∘ g_n is 1/n-crooked (1-based k <= n).
struct ChainReport {
  std::vector<std::vector<char>> pass;
  bool all_pass() const;
};

std::optional<ChainReport> chain_check(const std::vector<PLIntervalMap>& maps);

}  // namespace plf

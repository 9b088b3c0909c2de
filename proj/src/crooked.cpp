#include "plf/crooked.hpp"

#include <algorithm>
#include <atomic>

namespace plf {

namespace {

Int rat_floor(const Rat& r) {
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);  // > 0
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

Rat round_to_grid(const Rat& y, const Rat& delta) {
  Rat r = Rat(rat_floor(y / delta + Rat(1, 2))) * delta;
  if (r < 0) r = 0;
  if (r > 1) r = 1;
  return r;
}

}  // namespace

Rat PLIntervalMap::value_at(const Rat& x) const {
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (x < bp[i].first || x > bp[i + 1].first) continue;
    const Rat &x0 = bp[i].first, &y0 = bp[i].second;
    const Rat &x1 = bp[i + 1].first, &y1 = bp[i + 1].second;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  return bp.back().second;
}

bool plmap_valid(const PLIntervalMap& g, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (g.bp.size() < 2) return fail("need at least two breakpoints");
  if (g.bp.front().first != 0 || g.bp.back().first != 1)
    return fail("domain must be exactly [0,1]");
  for (std::size_t i = 0; i < g.bp.size(); ++i) {
    if (g.bp[i].second < 0 || g.bp[i].second > 1)
      return fail("values must lie in [0,1]");
    if (i + 1 < g.bp.size() && !(g.bp[i].first < g.bp[i + 1].first))
      return fail("breakpoint abscissae must strictly increase");
  }
  return true;
}

bool plmap_onto(const PLIntervalMap& g) {
  Rat lo = 1, hi = 0;
  for (const auto& [x, y] : g.bp) {
    lo = rat_min(lo, y);
    hi = rat_max(hi, y);
  }
  return lo == 0 && hi == 1;
}

PLIntervalMap plmap_identity() { return {{{0, 0}, {1, 1}}}; }

PLIntervalMap plmap_tent() {
  return {{{0, 0}, {Rat(1, 2), 1}, {1, 0}}};
}

PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g) {
  std::vector<Rat> xs;
  for (const auto& [x, y] : g.bp) xs.push_back(x);
  for (std::size_t i = 0; i + 1 < g.bp.size(); ++i) {
    const Rat &x0 = g.bp[i].first, &y0 = g.bp[i].second;
    const Rat &x1 = g.bp[i + 1].first, &y1 = g.bp[i + 1].second;
    if (y0 == y1) continue;
    for (const auto& [u, v] : f.bp) {
      if ((u > y0 && u < y1) || (u > y1 && u < y0))
        xs.push_back(x0 + (u - y0) * (x1 - x0) / (y1 - y0));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PLIntervalMap h;
  for (const Rat& x : xs) h.bp.push_back({x, f.value_at(g.value_at(x))});
  // Drop collinear interior breakpoints.
  PLIntervalMap out;
  for (const auto& p : h.bp) {
    while (out.bp.size() >= 2) {
      const auto& a = out.bp[out.bp.size() - 2];
      const auto& b = out.bp.back();
      if ((b.first - a.first) * (p.second - a.second) ==
          (p.first - a.first) * (b.second - a.second))
        out.bp.pop_back();
      else
        break;
    }
    out.bp.push_back(p);
  }
  return out;
}

PLIntervalMap crooked_refine(const PLIntervalMap& g) {
  // Cut the breakpoint sequence into maximal monotone laps.
  std::vector<std::size_t> cut = {0};
  int dir = 0;
  for (std::size_t i = 0; i + 1 < g.bp.size(); ++i) {
    Rat d = g.bp[i + 1].second - g.bp[i].second;
    int s = d > 0 ? 1 : d < 0 ? -1 : 0;
    if (s != 0 && dir != 0 && s != dir) {
      cut.push_back(i);
      dir = s;
    } else if (s != 0) {
      dir = s;
    }
  }
  cut.push_back(g.bp.size() - 1);
  PLIntervalMap out;
  for (std::size_t l = 0; l + 1 < cut.size(); ++l) {
    const Rat &a = g.bp[cut[l]].first, &c = g.bp[cut[l]].second;
    const Rat &b = g.bp[cut[l + 1]].first, &d = g.bp[cut[l + 1]].second;
    if (!out.bp.empty()) out.bp.pop_back();  // shared lap endpoint
    if (c == d) {
      out.bp.push_back({a, c});
      out.bp.push_back({b, d});
      continue;
    }
    Rat w = b - a, h = d - c;
    out.bp.push_back({a, c});
    out.bp.push_back({a + w / 3, c + h * Rat(2, 3)});
    out.bp.push_back({a + w * Rat(2, 3), c + h / 3});
    out.bp.push_back({b, d});
  }
  return out;
}

std::vector<Rat> critical_values(const PLIntervalMap& g) {
  std::vector<Rat> out = {g.bp.front().second, g.bp.back().second};
  for (std::size_t i = 1; i + 1 < g.bp.size(); ++i) {
    int prev = 0, next = 0;
    for (std::size_t j = i; j > 0 && prev == 0; --j) {
      Rat d = g.bp[j].second - g.bp[j - 1].second;
      prev = d > 0 ? 1 : d < 0 ? -1 : 0;
    }
    for (std::size_t j = i; j + 1 < g.bp.size() && next == 0; ++j) {
      Rat d = g.bp[j + 1].second - g.bp[j].second;
      next = d > 0 ? 1 : d < 0 ? -1 : 0;
    }
    if (prev * next < 0) out.push_back(g.bp[i].second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Rat, Rat>> level_set(const PLIntervalMap& g,
                                           const Rat& y) {
  std::vector<std::pair<Rat, Rat>> out;
  auto add = [&](const Rat& a, const Rat& b) {
    if (!out.empty() && out.back().second >= a)
      out.back().second = rat_max(out.back().second, b);
    else
      out.push_back({a, b});
  };
  for (std::size_t i = 0; i + 1 < g.bp.size(); ++i) {
    const Rat &x0 = g.bp[i].first, &y0 = g.bp[i].second;
    const Rat &x1 = g.bp[i + 1].first, &y1 = g.bp[i + 1].second;
    if (y0 == y1) {
      if (y0 == y) add(x0, x1);
      continue;
    }
    if ((y >= y0 && y <= y1) || (y >= y1 && y <= y0)) {
      Rat x = x0 + (y - y0) * (x1 - x0) / (y1 - y0);
      add(x, x);
    }
  }
  return out;
}

bool is_delta_net(const std::vector<Rat>& net, const Rat& delta) {
  if (net.empty()) return false;
  if (net.front() > delta) return false;
  if (Rat(1 - net.back()) > delta) return false;
  for (std::size_t i = 0; i + 1 < net.size(); ++i)
    if (net[i + 1] - net[i] > 2 * delta) return false;
  return true;
}

namespace {

// The hardest x-pairs are the right endpoints of the y1-level
// components against the left endpoints of the y4-level components.
struct LevelCache {
  std::vector<std::vector<std::pair<Rat, Rat>>> comp;  // per net value
};

// inf of level ∩ (x1, x4), as a value in [x1, x4]; false if empty.
bool inf_in(const std::vector<std::pair<Rat, Rat>>& lv, const Rat& x1,
            const Rat& x4, Rat* out) {
  for (const auto& [p, q] : lv) {
    if (q <= x1) continue;
    if (p >= x4) return false;
    *out = rat_max(p, x1);
    return true;
  }
  return false;
}

bool sup_in(const std::vector<std::pair<Rat, Rat>>& lv, const Rat& x1,
            const Rat& x4, Rat* out) {
  bool found = false;
  for (const auto& [p, q] : lv) {
    if (q <= x1) continue;
    if (p >= x4) break;
    *out = rat_min(q, x4);
    found = true;
  }
  return found;
}

// Check one monotone quadruple (indices into the net, i1..i4 giving
// y1..y4 in quadruple order).
bool quad_ok(const LevelCache& lc, const std::vector<Rat>& net, int i1, int i2,
             int i3, int i4, CrookedCounterexample* cex) {
  for (const auto& [p1, q1] : lc.comp[i1]) {
    const Rat& x1 = q1;
    for (const auto& [p4, q4] : lc.comp[i4]) {
      const Rat& x4 = p4;
      if (!(x1 < x4)) continue;
      Rat a, b;
      bool ok = inf_in(lc.comp[i3], x1, x4, &a) &&
                sup_in(lc.comp[i2], x1, x4, &b) && a < b;
      if (!ok) {
        if (cex)
          *cex = {net[i1], net[i2], net[i3], net[i4], x1, x4};
        return false;
      }
    }
  }
  return true;
}

bool net_passes_impl(const PLIntervalMap& g, const std::vector<Rat>& net,
                     CrookedCounterexample* cex, bool parallel) {
  int n = (int)net.size();
  LevelCache lc;
  lc.comp.resize(n);
  for (int i = 0; i < n; ++i) lc.comp[i] = level_set(g, net[i]);
  std::atomic<bool> bad{false};
  CrookedCounterexample found;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int a = 0; a < n; ++a) {
    if (bad.load(std::memory_order_relaxed)) continue;
    for (int b = a + 1; b < n && !bad.load(std::memory_order_relaxed); ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          CrookedCounterexample local;
          // increasing: y = (a,b,c,d); decreasing: y = (d,c,b,a)
          if (!quad_ok(lc, net, a, b, c, d, &local) ||
              !quad_ok(lc, net, d, c, b, a, &local)) {
            bool expect = false;
            if (bad.compare_exchange_strong(expect, true)) found = local;
            break;
          }
        }
  }
  if (bad.load() && cex) *cex = found;
  return !bad.load();
}

}  // namespace

bool net_passes(const PLIntervalMap& g, const std::vector<Rat>& net,
                CrookedCounterexample* cex) {
  return net_passes_impl(g, net, cex, true);
}

bool net_passes_serial(const PLIntervalMap& g, const std::vector<Rat>& net,
                       CrookedCounterexample* cex) {
  return net_passes_impl(g, net, cex, false);
}

std::optional<CrookednessCertificate> is_delta_crooked(
    const PLIntervalMap& g, const Rat& delta, CrookedCounterexample* cex) {
  if (!plmap_onto(g)) return std::nullopt;
  std::vector<std::vector<Rat>> nets;
  for (const Rat& step : {delta, Rat(delta / 2)}) {
    std::vector<Rat> net;
    for (Rat x = 0; x < 1; x += step) net.push_back(x);
    net.push_back(1);
    nets.push_back(std::move(net));
  }
  {
    std::vector<Rat> net;
    for (const Rat& y : critical_values(g))
      net.push_back(round_to_grid(y, delta));
    std::sort(net.begin(), net.end());
    net.erase(std::unique(net.begin(), net.end()), net.end());
    if (is_delta_net(net, delta)) nets.push_back(std::move(net));
  }
  CrookednessCertificate cert;
  cert.delta = delta;
  for (auto& net : nets) {
    if (net_passes(g, net, cex)) {
      cert.net = std::move(net);
      cert.verified = true;
      return cert;
    }
  }
  return cert;
}

bool ChainReport::all_pass() const {
  for (const auto& row : pass)
    for (char c : row)
      if (!c) return false;
  return true;
}

std::optional<ChainReport> chain_check(
    const std::vector<PLIntervalMap>& maps) {
  for (const PLIntervalMap& m : maps)
    if (!plmap_onto(m)) return std::nullopt;
  ChainReport rep;
  for (std::size_t n = 1; n <= maps.size(); ++n) {
    std::vector<char> row;
    PLIntervalMap comp = maps[n - 1];
    // comp = g_k ∘ ... ∘ g_n, built from k = n downwards.
    for (std::size_t k = n; k >= 1; --k) {
      if (k < n) comp = compose(maps[k - 1], comp);
      auto cert = is_delta_crooked(comp, Rat(1, (long)n));
      row.push_back(cert && cert->verified ? 1 : 0);
    }
    std::reverse(row.begin(), row.end());  // row[k-1] for k = 1..n
    rep.pass.push_back(std::move(row));
  }
  return rep;
}

}  // namespace plf

#include "plf/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace plf {

int Graph::degree(int v) const {
  int d = 0;
  for (const Edge& e : edges) {
    if (e.u == v) ++d;
    if (e.v == v) ++d;
  }
  return d;
}

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

std::vector<int> Graph::vertex_components() const {
  Dsu dsu(num_vertices);
  for (const Edge& e : edges) dsu.unite(e.u, e.v);
  std::vector<int> comp(num_vertices, -1);
  int next = 0;
  for (int v = 0; v < num_vertices; ++v) {
    int r = dsu.find(v);
    if (comp[r] < 0) comp[r] = next++;
    comp[v] = comp[r];
  }
  return comp;
}

bool Graph::connected() const {
  if (num_vertices == 0) return false;
  auto comp = vertex_components();
  return std::all_of(comp.begin(), comp.end(),
                     [](int c) { return c == 0; });
}

bool Graph::valid(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (num_vertices <= 0) return fail("graph has no vertices");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices) {
      std::ostringstream os;
      os << "edge " << i << " has endpoint out of range";
      return fail(os.str());
    }
    if (e.length <= 0) {
      std::ostringstream os;
      os << "edge " << i << " has non-positive length";
      return fail(os.str());
    }
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (degree(v) == 0) {
      std::ostringstream os;
      os << "vertex " << v << " is isolated";
      return fail(os.str());
    }
  }
  return true;
}

Graph make_arc() {
  Graph g;
  g.num_vertices = 2;
  g.edges = {{0, 1, 1}};
  return g;
}

Graph make_circle() {
  Graph g;
  g.num_vertices = 2;
  g.edges = {{0, 1, 1}, {0, 1, 1}};
  return g;
}

Graph make_triod() {
  Graph g;
  g.num_vertices = 4;
  g.edges = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  return g;
}

GraphPoint GraphPoint::at_vertex(int v) {
  GraphPoint p;
  p.vertex = v;
  return p;
}

GraphPoint GraphPoint::on_edge(const Graph& g, int e, const Rat& t) {
  if (t == 0) return at_vertex(g.edges[e].u);
  if (t == 1) return at_vertex(g.edges[e].v);
  GraphPoint p;
  p.edge = e;
  p.t = t;
  return p;
}

bool operator==(const GraphPoint& a, const GraphPoint& b) {
  return a.vertex == b.vertex && a.edge == b.edge && a.t == b.t;
}

std::strong_ordering operator<=>(const GraphPoint& a, const GraphPoint& b) {
  // Vertices first (by id), then edge-interior points by (edge, t).
  if (a.is_vertex() != b.is_vertex())
    return a.is_vertex() ? std::strong_ordering::less
                         : std::strong_ordering::greater;
  if (a.is_vertex()) return a.vertex <=> b.vertex;
  if (a.edge != b.edge) return a.edge <=> b.edge;
  if (a.t < b.t) return std::strong_ordering::less;
  if (b.t < a.t) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const GraphPoint& p) {
  std::ostringstream os;
  if (p.is_vertex())
    os << "v" << p.vertex;
  else
    os << "e" << p.edge << "@" << rat_to_string(p.t);
  return os.str();
}

bool FinitePointSet::contains(const GraphPoint& p) const {
  return std::binary_search(pts.begin(), pts.end(), p);
}

void FinitePointSet::insert(const GraphPoint& p) {
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || !(*it == p)) pts.insert(it, p);
}

FinitePointSet fps_union(const FinitePointSet& a, const FinitePointSet& b) {
  FinitePointSet r;
  std::set_union(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                 std::back_inserter(r.pts));
  return r;
}

FinitePointSet fps_intersection(const FinitePointSet& a,
                                const FinitePointSet& b) {
  FinitePointSet r;
  std::set_intersection(a.pts.begin(), a.pts.end(), b.pts.begin(),
                        b.pts.end(), std::back_inserter(r.pts));
  return r;
}

FinitePointSet fps_difference(const FinitePointSet& a,
                              const FinitePointSet& b) {
  FinitePointSet r;
  std::set_difference(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                      std::back_inserter(r.pts));
  return r;
}

bool fps_subset(const FinitePointSet& a, const FinitePointSet& b) {
  return std::includes(b.pts.begin(), b.pts.end(), a.pts.begin(),
                       a.pts.end());
}

bool fps_disjoint(const FinitePointSet& a, const FinitePointSet& b) {
  return fps_intersection(a, b).empty();
}

bool is_generic(const Graph& g, const std::vector<FinitePointSet>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const GraphPoint& p : family[i].pts) {
      if (p.is_vertex() &&
          (g.is_branch_point(p.vertex) || g.is_endpoint(p.vertex)))
        return false;
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!fps_disjoint(family[i], family[j])) return false;
    }
  }
  return true;
}

}  // namespace plf

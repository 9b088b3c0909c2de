#pragma once
#include <compare>
#include <string>
#include <vector>

#include "plf/rational.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Graph: a finite 1-complex.  Every edge is parameterized by [0,1]
// independent of its metric length; loops and multi-edges are allowed.
// Branch points are vertices of degree >= 3, endpoints vertices of
// degree 1; degree-2 vertices are transparent.
// ════════════════════════════════════════════════════════════════════

struct Edge {
  int u = 0;  // endpoint at parameter 0
  int v = 0;  // endpoint at parameter 1
  Rat length = 1;
};

struct Graph {
  int num_vertices = 0;
  std::vector<Edge> edges;

  int degree(int v) const;
  bool is_branch_point(int v) const { return degree(v) >= 3; }
  bool is_endpoint(int v) const { return degree(v) == 1; }

  // Component id per vertex (two vertices share an id iff connected).
  std::vector<int> vertex_components() const;
  bool connected() const;

  // Structural sanity: endpoints in range, no isolated vertices,
  // positive lengths.
  bool valid(std::string* why = nullptr) const;
};

// Convenience constructors used throughout the tests and corpus.
Graph make_arc();     // one edge, two vertices
Graph make_circle();  // two vertices joined by two edges
Graph make_triod();   // center vertex 0, legs to vertices 1,2,3

// ════════════════════════════════════════════════════════════════════
// GraphPoint: canonical point of a graph.  Points at edge ends are
// normalized to the vertex representation so equality is decidable.
// ════════════════════════════════════════════════════════════════════

struct GraphPoint {
  int vertex = -1;  // >= 0 for a vertex point
  int edge = -1;    // >= 0 for an interior point, with 0 < t < 1
  Rat t = 0;

  bool is_vertex() const { return vertex >= 0; }

  static GraphPoint at_vertex(int v);
  static GraphPoint on_edge(const Graph& g, int e, const Rat& t);

  friend bool operator==(const GraphPoint& a, const GraphPoint& b);
  friend std::strong_ordering operator<=>(const GraphPoint& a,
                                          const GraphPoint& b);
};

std::string to_string(const GraphPoint& p);

// ════════════════════════════════════════════════════════════════════
// FinitePointSet: sorted duplicate-free set of GraphPoints.
// ════════════════════════════════════════════════════════════════════

struct FinitePointSet {
  std::vector<GraphPoint> pts;  // sorted, unique

  bool empty() const { return pts.empty(); }
  std::size_t size() const { return pts.size(); }
  bool contains(const GraphPoint& p) const;
  void insert(const GraphPoint& p);

  friend bool operator==(const FinitePointSet&, const FinitePointSet&) =
      default;
};

FinitePointSet fps_union(const FinitePointSet& a, const FinitePointSet& b);
FinitePointSet fps_intersection(const FinitePointSet& a,
                                const FinitePointSet& b);
FinitePointSet fps_difference(const FinitePointSet& a,
                              const FinitePointSet& b);
bool fps_subset(const FinitePointSet& a, const FinitePointSet& b);
bool fps_disjoint(const FinitePointSet& a, const FinitePointSet& b);

// True iff every set avoids branch points and endpoints of g and the
// sets are pairwise disjoint.
bool is_generic(const Graph& g, const std::vector<FinitePointSet>& family);

}  // namespace plf

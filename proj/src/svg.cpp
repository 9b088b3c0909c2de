#include "plf/svg.hpp"

#include <sstream>

namespace plf {

namespace {

constexpr int kSquare = 200;
constexpr int kMargin = 20;

struct Canvas {
  std::ostringstream out;
  const Graph* g = nullptr;

  std::string px(int edge, const Rat& t, const Rat& y) const {
    Rat x = Rat(kMargin) + Rat(edge) * (kSquare + kMargin) + t * kSquare;
    Rat yy = Rat(kMargin) + (Rat(1) - y) * kSquare;
    return rat_to_decimal(x, 6) + "," + rat_to_decimal(yy, 6);
  }

  void header() {
    int w = kMargin + (int)g->edges.size() * (kSquare + kMargin);
    int h = kSquare + 2 * kMargin + 20;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
        << "\">\n";
    for (std::size_t e = 0; e < g->edges.size(); ++e) {
      int x0 = kMargin + (int)e * (kSquare + kMargin);
      out << "<rect x=\"" << x0 << "\" y=\"" << kMargin << "\" width=\""
          << kSquare << "\" height=\"" << kSquare
          << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << x0 << "\" y=\"" << (kMargin + kSquare + 16)
          << "\" font-family=\"monospace\" font-size=\"12\">e" << e << ": v"
          << g->edges[e].u << "-v" << g->edges[e].v << "</text>\n";
    }
  }

  void footer() { out << "</svg>\n"; }

  void seg(const Seg& s, const std::string& color) {
    out << "<line x1=\"";
    std::string a = px(s.edge, s.t1, s.y1), b = px(s.edge, s.t2, s.y2);
    out << a.substr(0, a.find(',')) << "\" y1=\"" << a.substr(a.find(',') + 1)
        << "\" x2=\"" << b.substr(0, b.find(',')) << "\" y2=\""
        << b.substr(b.find(',') + 1) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
  }

  void sheet(const StraightSet& s, const std::string& color,
             bool dashed = false) {
    for (const auto& per_edge : s.pieces)
      for (const SheetPiece& p : per_edge) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"";
        if (dashed) out << " stroke-dasharray=\"4 3\"";
        out << " points=\"";
        bool first = true;
        for (const auto& [t, y] : p.bp) {
          if (!first) out << " ";
          out << px(p.edge, t, y);
          first = false;
        }
        out << "\"/>\n";
      }
  }

  // A cylinder point drawn in every incident edge square.
  void dot(const CylPoint& p, const std::string& color, int r) {
    auto circle = [&](int edge, const Rat& t) {
      std::string c = px(edge, t, p.y);
      out << "<circle cx=\"" << c.substr(0, c.find(',')) << "\" cy=\""
          << c.substr(c.find(',') + 1) << "\" r=\"" << r << "\" fill=\""
          << color << "\"/>\n";
    };
    if (p.p.is_vertex()) {
      for (std::size_t e = 0; e < g->edges.size(); ++e) {
        if (g->edges[e].u == p.p.vertex) circle((int)e, 0);
        if (g->edges[e].v == p.p.vertex) circle((int)e, 1);
      }
    } else {
      circle(p.p.edge, p.p.t);
    }
  }

  void dots(const CylPointSet& s, const std::string& color, int r) {
    for (const CylPoint& p : s.pts) dot(p, color, r);
  }
};

}  // namespace

std::optional<std::string> render_svg(const Document& d) {
  Canvas c;
  switch (d.kind) {
    case DocKind::Graph:
      c.g = &d.graph;
      c.header();
      c.footer();
      return c.out.str();
    case DocKind::Separator:
      c.g = &d.graph;
      c.header();
      for (const Seg& s : d.segments) c.seg(s, "#000000");
      c.footer();
      return c.out.str();
    case DocKind::Stairwell: {
      const Stairwell& sw = d.stairwell;
      if (sw.levels.empty()) return std::nullopt;
      c.g = &sw.g;
      c.header();
      for (const StraightSet& s : sw.levels) c.sheet(s, "#000000");
      for (const CylPointSet& s : sw.alphas) c.dots(s, "#000000", 3);
      for (const CylPointSet& s : sw.betas) c.dots(s, "#000000", 3);
      c.footer();
      return c.out.str();
    }
    case DocKind::BrokenStairwell: {
      const BrokenStairwell& b = d.broken;
      if (b.stairs.levels.empty()) return std::nullopt;
      c.g = &b.stairs.g;
      c.header();
      for (const StraightSet& s : b.stairs.levels) c.sheet(s, "#000000");
      c.sheet(b.p1, "#555555", true);
      c.sheet(b.p2, "#555555", true);
      for (const CylPointSet& s : b.stairs.alphas) c.dots(s, "#000000", 3);
      for (const CylPointSet& s : b.stairs.betas) c.dots(s, "#000000", 3);
      c.dots(b.gamma, "#999999", 4);   // grey dots: γ
      c.dots(b.ends_p1, "#000000", 4);  // black dots: E(P1)
      c.footer();
      return c.out.str();
    }
    default:
      return std::nullopt;
  }
}

}  // namespace plf

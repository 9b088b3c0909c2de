#include "plf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace plf {

namespace {

using Json = nlohmann::ordered_json;

// ── writers ─────────────────────────────────────────────────────────

Json j_rat(const Rat& r) { return rat_to_string(r); }

Json j_graph(const Graph& g) {
  Json j;
  j["num_vertices"] = g.num_vertices;
  j["edges"] = Json::array();
  for (const Edge& e : g.edges)
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"length", j_rat(e.length)}});
  return j;
}

Json j_gp(const GraphPoint& p) {
  if (p.is_vertex()) return Json{{"v", p.vertex}};
  return Json{{"e", p.edge}, {"t", j_rat(p.t)}};
}

Json j_cyl(const CylPoint& p) {
  Json j = j_gp(p.p);
  j["y"] = j_rat(p.y);
  return j;
}

Json j_cps(const CylPointSet& s) {
  Json j = Json::array();
  for (const CylPoint& p : s.pts) j.push_back(j_cyl(p));
  return j;
}

Json j_closed(const ClosedSet& s) {
  Json j;
  j["iv"] = Json::array();
  for (const auto& per_edge : s.iv) {
    Json row = Json::array();
    for (const Interval& i : per_edge)
      row.push_back(Json::array({j_rat(i.a), j_rat(i.b)}));
    j["iv"].push_back(row);
  }
  j["vert"] = Json::array();
  for (char c : s.vert) j["vert"].push_back((int)c);
  j["isolated"] = Json::array();
  for (const GraphPoint& p : s.isolated.pts) j["isolated"].push_back(j_gp(p));
  return j;
}

Json j_straight(const StraightSet& s) {
  Json j = Json::array();
  for (const auto& per_edge : s.pieces)
    for (const SheetPiece& p : per_edge) {
      Json pj;
      pj["edge"] = p.edge;
      pj["bp"] = Json::array();
      for (const auto& [t, y] : p.bp)
        pj["bp"].push_back(Json::array({j_rat(t), j_rat(y)}));
      j.push_back(pj);
    }
  return j;
}

Json j_stairwell(const Stairwell& sw, bool partial,
                 const std::optional<Rat>& tube_radius) {
  Json j;
  j["graph"] = j_graph(sw.g);
  j["levels"] = Json::array();
  for (const StraightSet& s : sw.levels) j["levels"].push_back(j_straight(s));
  j["alphas"] = Json::array();
  for (const CylPointSet& s : sw.alphas) j["alphas"].push_back(j_cps(s));
  j["betas"] = Json::array();
  for (const CylPointSet& s : sw.betas) j["betas"].push_back(j_cps(s));
  if (partial) j["partial"] = true;
  if (tube_radius) j["tube_radius"] = j_rat(*tube_radius);
  return j;
}

Json j_fold(const SimpleFold& f) {
  Json j;
  j["G"] = j_graph(f.G);
  j["F"] = j_graph(f.F);
  j["G1"] = j_closed(f.G1);
  j["G2"] = j_closed(f.G2);
  j["G3"] = j_closed(f.G3);
  j["F1"] = j_closed(f.F1);
  j["F2"] = j_closed(f.F2);
  j["F3"] = j_closed(f.F3);
  j["emap"] = Json::array();
  for (const FoldEdgeMap& m : f.emap)
    j["emap"].push_back(
        {{"g_edge", m.g_edge}, {"a", j_rat(m.a)}, {"b", j_rat(m.b)}});
  j["part"] = f.part;
  j["vmap"] = Json::array();
  for (const GraphPoint& p : f.vmap) j["vmap"].push_back(j_gp(p));
  return j;
}

// ── readers ─────────────────────────────────────────────────────────

struct ParseError {
  std::string what;
};

Rat p_rat(const Json& j) {
  if (!j.is_string()) throw ParseError{"rational must be a \"p/q\" string"};
  auto r = rat_from_string(j.get<std::string>());
  if (!r) throw ParseError{"malformed rational: " + j.get<std::string>()};
  return *r;
}

Graph p_graph(const Json& j) {
  Graph g;
  g.num_vertices = j.at("num_vertices").get<int>();
  for (const Json& e : j.at("edges"))
    g.edges.push_back(
        {e.at("u").get<int>(), e.at("v").get<int>(), p_rat(e.at("length"))});
  std::string why;
  if (!g.valid(&why)) throw ParseError{"invalid graph: " + why};
  return g;
}

GraphPoint p_gp(const Graph& g, const Json& j) {
  if (j.contains("v")) {
    int v = j.at("v").get<int>();
    if (v < 0 || v >= g.num_vertices) throw ParseError{"vertex out of range"};
    return GraphPoint::at_vertex(v);
  }
  int e = j.at("e").get<int>();
  if (e < 0 || e >= (int)g.edges.size()) throw ParseError{"edge out of range"};
  Rat t = p_rat(j.at("t"));
  if (t < 0 || t > 1) throw ParseError{"edge parameter out of [0,1]"};
  return GraphPoint::on_edge(g, e, t);
}

CylPoint p_cyl(const Graph& g, const Json& j) {
  Rat y = p_rat(j.at("y"));
  if (y < 0 || y > 1) throw ParseError{"height out of [0,1]"};
  return {p_gp(g, j), y};
}

CylPointSet p_cps(const Graph& g, const Json& j) {
  CylPointSet s;
  for (const Json& p : j) s.insert(p_cyl(g, p));
  return s;
}

ClosedSet p_closed(const Graph& g, const Json& j) {
  ClosedSet s = make_empty_set(g);
  const Json& iv = j.at("iv");
  if (iv.size() != g.edges.size())
    throw ParseError{"interval table size mismatch"};
  for (std::size_t e = 0; e < iv.size(); ++e)
    for (const Json& i : iv[e]) {
      Rat a = p_rat(i.at(0)), b = p_rat(i.at(1));
      if (!(0 <= a && a < b && b <= 1)) throw ParseError{"bad interval"};
      s.iv[e].push_back({a, b});
    }
  const Json& vert = j.at("vert");
  if ((int)vert.size() != g.num_vertices)
    throw ParseError{"vertex table size mismatch"};
  for (int v = 0; v < g.num_vertices; ++v)
    s.vert[v] = vert[v].get<int>() ? 1 : 0;
  for (const Json& p : j.at("isolated")) s.isolated.insert(p_gp(g, p));
  normalize(g, s);
  return s;
}

std::vector<Seg> p_segments(const Graph& g, const Json& j) {
  std::vector<Seg> out;
  for (const Json& sj : j) {
    Seg s;
    s.edge = sj.at("edge").get<int>();
    if (s.edge < 0 || s.edge >= (int)g.edges.size())
      throw ParseError{"segment edge out of range"};
    s.t1 = p_rat(sj.at("t1"));
    s.y1 = p_rat(sj.at("y1"));
    s.t2 = p_rat(sj.at("t2"));
    s.y2 = p_rat(sj.at("y2"));
    if (!(s.t1 < s.t2)) throw ParseError{"segment must have t1 < t2"};
    out.push_back(s);
  }
  return out;
}

StraightSet p_straight(const Graph& g, const Json& j) {
  std::vector<SheetPiece> pieces;
  for (const Json& pj : j) {
    SheetPiece p;
    p.edge = pj.at("edge").get<int>();
    if (p.edge < 0 || p.edge >= (int)g.edges.size())
      throw ParseError{"piece edge out of range"};
    for (const Json& b : pj.at("bp"))
      p.bp.push_back({p_rat(b.at(0)), p_rat(b.at(1))});
    if (p.bp.size() < 2) throw ParseError{"piece needs two breakpoints"};
    pieces.push_back(std::move(p));
  }
  auto s = assemble_level(g, std::move(pieces));
  if (!s) throw ParseError{"pieces do not form a straight set"};
  return *s;
}

Stairwell p_stairwell(const Json& j, bool* partial,
                      std::optional<Rat>* tube_radius) {
  Stairwell sw;
  sw.g = p_graph(j.at("graph"));
  for (const Json& lj : j.at("levels"))
    sw.levels.push_back(p_straight(sw.g, lj));
  for (const Json& aj : j.at("alphas")) sw.alphas.push_back(p_cps(sw.g, aj));
  for (const Json& bj : j.at("betas")) sw.betas.push_back(p_cps(sw.g, bj));
  if (partial) *partial = j.value("partial", false);
  if (tube_radius && j.contains("tube_radius"))
    *tube_radius = p_rat(j.at("tube_radius"));
  return sw;
}

SimpleFold p_fold(const Json& j) {
  SimpleFold f;
  f.G = p_graph(j.at("G"));
  f.F = p_graph(j.at("F"));
  f.G1 = p_closed(f.G, j.at("G1"));
  f.G2 = p_closed(f.G, j.at("G2"));
  f.G3 = p_closed(f.G, j.at("G3"));
  f.F1 = p_closed(f.F, j.at("F1"));
  f.F2 = p_closed(f.F, j.at("F2"));
  f.F3 = p_closed(f.F, j.at("F3"));
  for (const Json& m : j.at("emap")) {
    FoldEdgeMap em;
    em.g_edge = m.at("g_edge").get<int>();
    em.a = p_rat(m.at("a"));
    em.b = p_rat(m.at("b"));
    f.emap.push_back(em);
  }
  f.part = j.at("part").get<std::vector<int>>();
  for (const Json& p : j.at("vmap")) f.vmap.push_back(p_gp(f.G, p));
  if (f.emap.size() != f.F.edges.size() || f.part.size() != f.F.edges.size() ||
      (int)f.vmap.size() != f.F.num_vertices)
    throw ParseError{"fold table sizes mismatch"};
  return f;
}

PLIntervalMap p_map(const Json& j) {
  PLIntervalMap m;
  for (const Json& b : j) m.bp.push_back({p_rat(b.at(0)), p_rat(b.at(1))});
  std::string why;
  if (!plmap_valid(m, &why)) throw ParseError{"invalid interval map: " + why};
  return m;
}

}  // namespace

std::string kind_name(DocKind k) {
  switch (k) {
    case DocKind::Graph: return "graph";
    case DocKind::Separator: return "separator";
    case DocKind::Stairwell: return "stairwell";
    case DocKind::BrokenStairwell: return "broken_stairwell";
    case DocKind::FoldSequence: return "fold_sequence";
    case DocKind::IntervalMaps: return "interval_maps";
  }
  return "?";
}

std::optional<DocKind> kind_from_name(const std::string& s) {
  for (DocKind k :
       {DocKind::Graph, DocKind::Separator, DocKind::Stairwell,
        DocKind::BrokenStairwell, DocKind::FoldSequence, DocKind::IntervalMaps})
    if (kind_name(k) == s) return k;
  return std::nullopt;
}

std::string serialize_document(const Document& d) {
  Json j;
  j["schema_version"] = d.schema_version;
  j["kind"] = kind_name(d.kind);
  Json p;
  switch (d.kind) {
    case DocKind::Graph:
      p = j_graph(d.graph);
      break;
    case DocKind::Separator:
      p["graph"] = j_graph(d.graph);
      p["segments"] = Json::array();
      for (const Seg& s : d.segments)
        p["segments"].push_back({{"edge", s.edge},
                                 {"t1", j_rat(s.t1)},
                                 {"y1", j_rat(s.y1)},
                                 {"t2", j_rat(s.t2)},
                                 {"y2", j_rat(s.y2)}});
      break;
    case DocKind::Stairwell:
      p = j_stairwell(d.stairwell, d.partial, d.tube_radius);
      break;
    case DocKind::BrokenStairwell:
      p["stairwell"] = j_stairwell(d.broken.stairs, false, d.tube_radius);
      p["pit"] = d.broken.pit;
      p["p1"] = j_straight(d.broken.p1);
      p["p2"] = j_straight(d.broken.p2);
      p["gamma"] = j_cps(d.broken.gamma);
      p["ends_p1"] = j_cps(d.broken.ends_p1);
      break;
    case DocKind::FoldSequence:
      p["folds"] = Json::array();
      for (const SimpleFold& f : d.folds) p["folds"].push_back(j_fold(f));
      break;
    case DocKind::IntervalMaps:
      p["maps"] = Json::array();
      for (const PLIntervalMap& m : d.maps) {
        Json mj = Json::array();
        for (const auto& [x, y] : m.bp)
          mj.push_back(Json::array({j_rat(x), j_rat(y)}));
        p["maps"].push_back(mj);
      }
      break;
  }
  j["payload"] = p;
  return j.dump(2) + "\n";
}

std::optional<Document> parse_document(const std::string& text,
                                       std::string* why) {
  try {
    Json j = Json::parse(text);
    Document d;
    d.schema_version = j.at("schema_version").get<int>();
    if (d.schema_version != 1) throw ParseError{"unsupported schema version"};
    auto k = kind_from_name(j.at("kind").get<std::string>());
    if (!k) throw ParseError{"unknown document kind"};
    d.kind = *k;
    const Json& p = j.at("payload");
    switch (d.kind) {
      case DocKind::Graph:
        d.graph = p_graph(p);
        break;
      case DocKind::Separator:
        d.graph = p_graph(p.at("graph"));
        d.segments = p_segments(d.graph, p.at("segments"));
        break;
      case DocKind::Stairwell:
        d.stairwell = p_stairwell(p, &d.partial, &d.tube_radius);
        break;
      case DocKind::BrokenStairwell:
        d.broken.stairs = p_stairwell(p.at("stairwell"), nullptr, &d.tube_radius);
        d.broken.pit = p.at("pit").get<int>();
        d.broken.p1 = p_straight(d.broken.stairs.g, p.at("p1"));
        d.broken.p2 = p_straight(d.broken.stairs.g, p.at("p2"));
        d.broken.gamma = p_cps(d.broken.stairs.g, p.at("gamma"));
        d.broken.ends_p1 = p_cps(d.broken.stairs.g, p.at("ends_p1"));
        break;
      case DocKind::FoldSequence:
        for (const Json& fj : p.at("folds")) d.folds.push_back(p_fold(fj));
        break;
      case DocKind::IntervalMaps:
        for (const Json& mj : p.at("maps")) d.maps.push_back(p_map(mj));
        break;
    }
    return d;
  } catch (const ParseError& e) {
    if (why) *why = e.what;
  } catch (const std::exception& e) {
    if (why) *why = e.what();
  }
  return std::nullopt;
}

std::optional<Document> load_document(const std::string& path,
                                      std::string* why) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (why) *why = "cannot open " + path;
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), why);
}

bool save_document(const std::string& path, const Document& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << serialize_document(d);
  return (bool)out;
}

}  // namespace plf

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "plf/examples.hpp"
#include "plf/svg.hpp"
#include "plf/unfold.hpp"

namespace {

using namespace plf;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParseError = 2;
constexpr int kResource = 3;

int cmd_verify(const std::string& path, const std::string& kind) {
  std::string why;
  auto d = load_document(path, &why);
  if (!d) {
    std::cerr << "parse error: " << why << "\n";
    return kParseError;
  }
  if (!kind.empty() && kind != kind_name(d->kind)) {
    std::cerr << "expected kind " << kind << ", found " << kind_name(d->kind)
              << "\n";
    return kInvalid;
  }
  bool ok = true;
  switch (d->kind) {
    case DocKind::Graph:
      ok = d->graph.valid(&why);
      break;
    case DocKind::Separator:
      ok = arrangement_valid(d->graph, d->segments, &why);
      break;
    case DocKind::Stairwell:
      if (d->partial) {
        for (const StraightSet& s : d->stairwell.levels)
          ok = ok && straight_valid(d->stairwell.g, s, &why);
      } else {
        ok = validate_stairwell(d->stairwell, &why);
      }
      break;
    case DocKind::BrokenStairwell:
      ok = validate_broken(d->broken, &why);
      break;
    case DocKind::FoldSequence:
      for (const SimpleFold& f : d->folds) ok = ok && validate_fold(f, &why);
      break;
    case DocKind::IntervalMaps:
      for (const PLIntervalMap& m : d->maps) ok = ok && plmap_valid(m, &why);
      break;
  }
  if (!ok) {
    std::cerr << "invalid " << kind_name(d->kind) << ": " << why << "\n";
    return kInvalid;
  }
  std::cout << "valid " << kind_name(d->kind) << "\n";
  return kOk;
}

int cmd_stairwell(const std::string& path, const std::string& radius_s,
                  const std::string& out) {
  auto radius = rat_from_string(radius_s);
  if (!radius || *radius <= 0) {
    std::cerr << "parse error: bad tube radius " << radius_s << "\n";
    return kParseError;
  }
  std::string why;
  auto d = load_document(path, &why);
  if (!d) {
    std::cerr << "parse error: " << why << "\n";
    return kParseError;
  }
  if (d->kind != DocKind::Separator) {
    std::cerr << "expected a separator document\n";
    return kInvalid;
  }
  auto sw = from_separator(d->graph, d->segments, *radius, &why);
  if (!sw) {
    // Distinguish "bad input" from "tube too thin": retry wider.
    Rat r = *radius;
    while (r < 1) {
      r = rat_min(Rat(2 * r), Rat(1));
      std::string why2;
      if (from_separator(d->graph, d->segments, r, &why2)) {
        std::cerr << "tube too thin: required radius " << rat_to_string(r)
                  << "\n";
        return kResource;
      }
      if (r == 1) break;
    }
    std::cerr << "not a usable separator: " << why << "\n";
    return kInvalid;
  }
  std::cout << "height " << sw->height() << ", "
            << sw->g.edges.size() << " edge squares, tube radius "
            << rat_to_string(*radius) << "\n";
  if (!out.empty()) {
    Document od;
    od.kind = DocKind::Stairwell;
    od.stairwell = *sw;
    od.tube_radius = *radius;
    if (!save_document(out, od)) {
      std::cerr << "cannot write " << out << "\n";
      return kResource;
    }
  }
  return kOk;
}

int cmd_unfold(const std::string& path, const std::string& outdir) {
  std::string why;
  auto d = load_document(path, &why);
  if (!d) {
    std::cerr << "parse error: " << why << "\n";
    return kParseError;
  }
  if (d->kind != DocKind::Stairwell || d->partial) {
    std::cerr << "expected a complete stairwell document\n";
    return kInvalid;
  }
  auto rep = reduce_to_height_one(d->stairwell, &why);
  if (!rep) {
    std::cerr << "unfolding failed: " << why << "\n";
    return kInvalid;
  }
  std::cout << "step  action\n";
  for (std::size_t i = 0; i < rep->trace.size(); ++i)
    std::cout << i + 1 << "     " << rep->trace[i] << "\n";
  std::cout << "folds used: " << rep->folds.size() << " (bound "
            << rep->fold_bound << "), final graph: "
            << rep->result.g.edges.size() << " edges\n";
  if (!outdir.empty()) {
    Document fd;
    fd.kind = DocKind::FoldSequence;
    fd.folds = rep->folds;
    Document sd;
    sd.kind = DocKind::Stairwell;
    sd.stairwell = rep->result;
    if (!save_document(outdir + "/folds.json", fd) ||
        !save_document(outdir + "/final.json", sd)) {
      std::cerr << "cannot write into " << outdir << "\n";
      return kResource;
    }
  }
  return kOk;
}

int cmd_render(const std::string& path, const std::string& out) {
  std::string why;
  auto d = load_document(path, &why);
  if (!d) {
    std::cerr << "parse error: " << why << "\n";
    return kParseError;
  }
  auto svg = render_svg(*d);
  if (!svg) {
    std::cerr << "unsupported or empty document kind for rendering\n";
    return kInvalid;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os || !(os << *svg)) {
    std::cerr << "cannot write " << out << "\n";
    return kResource;
  }
  return kOk;
}

int cmd_crooked(const std::string& path, const std::string& delta_s,
                bool chain) {
  std::string why;
  auto d = load_document(path, &why);
  if (!d) {
    std::cerr << "parse error: " << why << "\n";
    return kParseError;
  }
  if (d->kind != DocKind::IntervalMaps) {
    std::cerr << "expected an interval_maps document\n";
    return kInvalid;
  }
  if (chain) {
    auto rep = chain_check(d->maps);
    if (!rep) {
      std::cerr << "all maps must be onto\n";
      return kInvalid;
    }
    for (std::size_t n = 0; n < rep->pass.size(); ++n) {
      std::cout << "n=" << n + 1 << " delta=1/" << n + 1 << " :";
      for (char c : rep->pass[n]) std::cout << " " << (c ? "pass" : "FAIL");
      std::cout << "\n";
    }
    return rep->all_pass() ? kOk : kInvalid;
  }
  auto delta = rat_from_string(delta_s);
  if (!delta || *delta <= 0) {
    std::cerr << "parse error: bad delta " << delta_s << "\n";
    return kParseError;
  }
  bool all = true;
  for (std::size_t i = 0; i < d->maps.size(); ++i) {
    auto cert = is_delta_crooked(d->maps[i], *delta);
    if (!cert) {
      std::cout << "map " << i << ": not onto\n";
      all = false;
      continue;
    }
    std::cout << "map " << i << ": "
              << (cert->verified ? "verified" : "not verified");
    if (cert->verified) {
      std::cout << " with net {";
      for (std::size_t j = 0; j < cert->net.size(); ++j)
        std::cout << (j ? "," : "") << rat_to_string(cert->net[j]);
      std::cout << "}";
    }
    std::cout << "\n";
    all = all && cert->verified;
  }
  return all ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for PL separators, stairwells and folds"};
  app.require_subcommand(1);

  std::string in, kind, out, radius = "1/16", outdir, delta;
  bool chain = false;

  auto* verify = app.add_subcommand("verify", "validate a document");
  verify->add_option("input", in)->required();
  verify->add_option("--kind", kind, "expected document kind");

  auto* stw = app.add_subcommand("stairwell",
                                 "extract a stairwell from a separator");
  stw->add_option("input", in)->required();
  stw->add_option("--tube-radius", radius, "vertical tube radius (p/q)");
  stw->add_option("--out", out, "output stairwell document");

  auto* unf = app.add_subcommand("unfold", "reduce a stairwell to height 1");
  unf->add_option("input", in)->required();
  unf->add_option("--out", outdir, "output directory");

  auto* ren = app.add_subcommand("render", "render a document as SVG");
  ren->add_option("input", in)->required();
  ren->add_option("--out", out)->required();

  auto* cro = app.add_subcommand("crooked", "δ-crookedness checks");
  cro->add_option("input", in)->required();
  cro->add_option("--delta", delta, "check each map at this delta (p/q)");
  cro->add_flag("--chain", chain, "check the inverse-limit chain condition");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return cmd_verify(in, kind);
  if (stw->parsed()) return cmd_stairwell(in, radius, out);
  if (unf->parsed()) return cmd_unfold(in, outdir);
  if (ren->parsed()) return cmd_render(in, out);
  if (cro->parsed()) {
    if (!chain && delta.empty()) {
      std::cerr << "need --delta or --chain\n";
      return 2;
    }
    return cmd_crooked(in, delta, chain);
  }
  return 2;
}

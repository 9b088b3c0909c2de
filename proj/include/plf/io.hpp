#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plf/crooked.hpp"
#include "plf/fold.hpp"
#include "plf/stairwell.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// JSON document model.  All rationals are encoded as "p/q" strings in
// lowest terms; serialization is canonical so parse ∘ serialize is
// the identity on canonical files.
// ════════════════════════════════════════════════════════════════════

enum class DocKind {
  Graph,
  Separator,
  Stairwell,
  BrokenStairwell,
  FoldSequence,
  IntervalMaps,
};

std::string kind_name(DocKind k);
std::optional<DocKind> kind_from_name(const std::string& s);

struct Document {
  int schema_version = 1;
  DocKind kind = DocKind::Graph;

  Graph graph;                  // Graph, Separator
  std::vector<Seg> segments;    // Separator
  Stairwell stairwell;          // Stairwell (graph inside)
  bool partial = false;         // Stairwell: single-sheet figure, axioms
                                // not asserted
  std::optional<Rat> tube_radius;  // Stairwell: tube around the levels
  BrokenStairwell broken;          // BrokenStairwell
  std::vector<SimpleFold> folds;   // FoldSequence
  std::vector<PLIntervalMap> maps;  // IntervalMaps
};

std::optional<Document> parse_document(const std::string& text,
                                       std::string* why = nullptr);
std::string serialize_document(const Document& d);

std::optional<Document> load_document(const std::string& path,
                                      std::string* why = nullptr);
bool save_document(const std::string& path, const Document& d);

}  // namespace plf

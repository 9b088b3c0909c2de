#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plf/io.hpp"

namespace plf {

// ════════════════════════════════════════════════════════════════════
// Built-in example documents: the corpus figures and the generators
// behind them.  All separator-derived documents are produced by the
// actual pipeline, so regenerating the corpus keeps it consistent
// with the engine.
// ════════════════════════════════════════════════════════════════════

// Boustrophedon separator with k strands over the middle of an arc
// (k >= 1); separates for odd k.
std::vector<Seg> snake_arc_segments(int k);

// Separator on the triod: flat sheets at height 1/2 over two legs and
// a three-strand snake over the third.
std::vector<Seg> snake_triod_segments();

Document example_simple_fold_arc();
Document example_simple_fold_triod();
Document example_straight_partial();
Document example_separator_arc(int k);
Document example_separator_triod();
Document example_interval_maps();

// Stairwell extracted from the k-strand arc snake, with tube radius
// recorded in the document.
std::optional<Document> example_stairwell(int k, const Rat& radius,
                                          std::string* why = nullptr);

// Broken stairwell of height 3 with the pit at level 1 (height
// reduction of the height-5 stairwell).
std::optional<Document> example_unfold_input(std::string* why = nullptr);

// One unfold step applied to the above: height 3, pit at level 2.
std::optional<Document> example_broken_pit2(std::string* why = nullptr);

// The full corpus as (file name, document) pairs.
std::optional<std::vector<std::pair<std::string, Document>>> build_corpus(
    std::string* why = nullptr);

}  // namespace plf

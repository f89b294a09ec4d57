/// @file trig.hpp
/// @brief Minimal Turtle/TriG writer and reader.
///
/// The writer emits one full statement per line, sorted, with the only
/// prefix being the annotation namespace. The reader accepts that output
/// plus `;`/`,` lists, `a`, PREFIX/GRAPH keywords and bare integers.

#pragma once

#include "oa/rdf.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace oa::rdf {

/// Writes the default graph(s) first, then each named graph as a block.
/// Blank nodes are relabelled canonically before sorting.
auto write_trig(const GraphSet& graphs, const std::optional<Iri>& oa_ns = std::nullopt) -> std::string;

/// Throws Error(named_graph_in_turtle) when `g` has a name.
auto write_turtle(const TripleGraph& g, const std::optional<Iri>& oa_ns = std::nullopt) -> std::string;

/// Throws Error(syntax_error) with a line number in the detail.
auto read_trig(std::string_view text) -> GraphSet;
auto read_turtle(std::string_view text) -> TripleGraph;

}  // namespace oa::rdf

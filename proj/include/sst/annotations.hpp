#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sst/graph.hpp"

namespace sst {

/// `(from) alias (to)` with an optional ` in context: t1,t2` suffix.
struct AnnotationTriple {
  std::string from;
  std::string alias;
  std::string to;
  std::vector<std::string> contexts;

  bool operator==(const AnnotationTriple&) const = default;
};

/// Parses one line. Returns std::nullopt for blank and comment-only lines;
/// throws parse on anything else that does not match the grammar.
std::optional<AnnotationTriple> parse_annotation(std::string_view line);

/// Adds one reported association per annotation line, creating unknown
/// concepts on the way. Errors carry the 1-based line number. Returns the
/// number of new associations (re-asserted lines only reinforce).
std::size_t ingest_annotations(std::string_view text, Graph& graph);

/// Applies a single parsed triple; returns the association id.
AssocId apply_annotation(const AnnotationTriple& triple, Graph& graph);

}  // namespace sst

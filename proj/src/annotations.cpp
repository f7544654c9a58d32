#include "sst/annotations.hpp"

#include <sstream>

#include "sst/error.hpp"

namespace sst {

namespace {

constexpr std::string_view kContextMarker = "in context:";

/// Drops a '#' comment that is not inside a parenthesised name.
std::string_view strip_comment(std::string_view line) {
  int depth = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '(') ++depth;
    if (line[i] == ')' && depth > 0) --depth;
    if (line[i] == '#' && depth == 0) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::parse, "malformed annotation: " + why);
}

/// Reads "(name)" at `pos`, advancing past the closing parenthesis.
std::string group(std::string_view s, std::size_t& pos, const char* which) {
  if (pos >= s.size() || s[pos] != '(') malformed(std::string("expected '(' before ") + which);
  const std::size_t close = s.find(')', pos + 1);
  if (close == std::string_view::npos) malformed(std::string("missing ')' after ") + which);
  std::string name = trim(s.substr(pos + 1, close - pos - 1));
  if (name.empty()) malformed(std::string("empty ") + which);
  pos = close + 1;
  return name;
}

}  // namespace

std::optional<AnnotationTriple> parse_annotation(std::string_view raw) {
  const std::string line = trim(strip_comment(raw));
  if (line.empty()) return std::nullopt;

  AnnotationTriple t;
  std::size_t pos = 0;
  t.from = group(line, pos, "source concept");
  const std::size_t open = line.find('(', pos);
  if (open == std::string::npos) malformed("missing target concept");
  t.alias = trim(std::string_view(line).substr(pos, open - pos));
  if (t.alias.empty()) malformed("missing association name");
  pos = open;
  t.to = group(line, pos, "target concept");

  const std::string rest = trim(std::string_view(line).substr(pos));
  if (!rest.empty()) {
    if (rest.compare(0, kContextMarker.size(), kContextMarker) != 0) {
      malformed("unexpected text '" + rest + "'");
    }
    std::stringstream list(rest.substr(kContextMarker.size()));
    std::string token;
    while (std::getline(list, token, ',')) {
      std::string n = trim(token);
      if (n.empty()) malformed("empty context token");
      t.contexts.push_back(std::move(n));
    }
    if (t.contexts.empty()) malformed("empty context list");
  }
  return t;
}

AssocId apply_annotation(const AnnotationTriple& triple, Graph& graph) {
  graph.alias_at(triple.alias);
  const ConceptId from = graph.add_concept(triple.from);
  const ConceptId to = graph.add_concept(triple.to);
  return graph.associate(from, triple.alias, to, make_context_set(triple.contexts), Provenance::reported);
}

std::size_t ingest_annotations(std::string_view text, Graph& graph) {
  std::size_t added = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = text.substr(start, end - start);
    try {
      if (auto triple = parse_annotation(line)) {
        const std::size_t edges = graph.edge_count();
        apply_annotation(*triple, graph);
        added += graph.edge_count() - edges;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return added;
}

}  // namespace sst

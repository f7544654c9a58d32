#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sst/context.hpp"
#include "sst/graph.hpp"

namespace sst {

enum class StoryMode { strict, narrative };

const char* to_string(StoryMode mode);

/// One hop of a story, labelled as read in the direction of travel.
struct StoryStep {
  ConceptId from = 0;
  ConceptId to = 0;
  AssocId assoc = 0;
  std::string label;
  STType type;
  double weight = 0.0;
};

/// A simple path of associations with attenuating certainty.
struct Story {
  std::set<ConceptId> axioms;
  ConceptId conclusion = 0;
  std::vector<StoryStep> steps;
  double certainty = 1.0;
  StoryMode mode = StoryMode::narrative;

  /// Concepts visited, axiom first.
  std::vector<ConceptId> path() const;
};

/// prod(weights) * beta^len; 1.0 for the empty path.
double certainty(std::span<const double> weights, double beta);

struct SearchOptions {
  StoryMode mode = StoryMode::narrative;
  std::size_t max_depth = 6;
  std::size_t limit = 10;
};

/// Maximal stories leaving `subject` along traversable edges of the view.
///
/// Edges are followed in their stored direction (NEAR both ways). Strict
/// stories keep one positive type throughout; narrative stories mix aliases.
/// A story of more than one hop uses only propagating aliases. A story is
/// reported once it cannot be extended or reaches max_depth. Results are
/// ordered by certainty, then by concept-name sequence.
std::vector<Story> story_search(const ActiveView& view, ConceptId subject,
                                const SearchOptions& options = {});

/// Stories of 1..depth hops that converge on `c`, found by walking edges
/// backwards from it.
std::vector<Story> explain(const ActiveView& view, ConceptId c, std::size_t depth,
                           std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Narrative stories that visit every query concept, each ending at the
/// step that completes the set. A single-concept query falls back to
/// story_search from it.
std::vector<Story> answer(const ActiveView& view, const std::set<ConceptId>& query,
                          std::size_t max_depth, std::size_t limit = 10);

struct Ranked {
  ConceptId concept_id = 0;
  double score = 0.0;
};

/// Generalizations reached by "is generalized by" readings.
std::vector<Ranked> induce(const ActiveView& view, ConceptId c, std::size_t max_depth = 6);
/// Exemplars and properties reached by contains / expresses readings.
std::vector<Ranked> deduce(const ActiveView& view, ConceptId c, std::size_t max_depth = 6);
/// Concepts characterized by the observed tokens; unknown tokens are skipped.
/// Ranked by summed edge weight.
std::vector<Ranked> abduce(const ActiveView& view, const std::vector<std::string>& tokens);
/// Direct positive NEAR neighbours.
std::vector<Ranked> lateral(const ActiveView& view, ConceptId c);

/// Same axioms, same conclusion.
bool equivalent(const Story& a, const Story& b);

/// "crumbs -(stick to)-> wool -(is liked by)-> Sarah"
std::string describe(const Graph& graph, const Story& story);

}  // namespace sst

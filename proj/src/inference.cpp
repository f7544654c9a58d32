#include "sst/inference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "sst/error.hpp"

namespace sst {

const char* to_string(StoryMode mode) {
  return mode == StoryMode::strict ? "strict" : "narrative";
}

std::vector<ConceptId> Story::path() const {
  std::vector<ConceptId> out;
  if (steps.empty()) {
    out.assign(axioms.begin(), axioms.end());
    return out;
  }
  out.push_back(steps.front().from);
  for (const auto& s : steps) out.push_back(s.to);
  return out;
}

double certainty(std::span<const double> weights, double beta) {
  double c = 1.0;
  for (double w : weights) c *= w * beta;
  return c;
}

bool equivalent(const Story& a, const Story& b) {
  return a.axioms == b.axioms && a.conclusion == b.conclusion;
}

std::string describe(const Graph& graph, const Story& story) {
  if (story.steps.empty()) return {};
  std::string out = graph.concept_at(story.steps.front().from).name;
  for (const auto& s : story.steps) {
    out += " -(" + s.label + ")-> " + graph.concept_at(s.to).name;
  }
  return out;
}

namespace {

bool propagates(const Graph& g, const StoryStep& s) {
  return g.alias_of(g.association(s.assoc)).propagating;
}

/// Steps leaving `u` in the direction of travel.
std::vector<StoryStep> forward_steps(const ActiveView& view, ConceptId u) {
  std::vector<StoryStep> out;
  for (const Neighbor& n : view.neighbors(u)) {
    if (!view.traversable(n.assoc)) continue;
    if (!n.outgoing && n.type.kind != Kind::near) continue;
    out.push_back(StoryStep{u, n.other, n.assoc, n.label, n.type, n.weight});
  }
  return out;
}

/// Steps arriving at `u`, each read from its far end.
std::vector<StoryStep> backward_steps(const ActiveView& view, ConceptId u) {
  const Graph& g = view.graph();
  std::vector<StoryStep> out;
  for (const Neighbor& n : view.neighbors(u)) {
    if (!view.traversable(n.assoc)) continue;
    const Association& a = g.association(n.assoc);
    const Alias& alias = g.alias_of(a);
    StoryStep s{n.other, u, n.assoc, {}, {}, n.weight};
    if (a.from == n.other) {
      s.label = alias.name;
      s.type = alias.type;
    } else {
      s.label = g.reciprocal_label(alias);
      s.type = reciprocal_of(alias.type);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Ranking order: certainty, then concept names, then labels, then ids.
struct StoryOrder {
  const Graph* graph;

  bool operator()(const Story& a, const Story& b) const {
    if (a.certainty != b.certainty) return a.certainty > b.certainty;
    const auto pa = a.path();
    const auto pb = b.path();
    const auto names = [&](const std::vector<ConceptId>& p) {
      std::vector<std::string> out;
      for (ConceptId c : p) out.push_back(graph->concept_at(c).name);
      return out;
    };
    if (auto na = names(pa), nb = names(pb); na != nb) return na < nb;
    for (std::size_t i = 0; i < std::min(a.steps.size(), b.steps.size()); ++i) {
      if (a.steps[i].label != b.steps[i].label) return a.steps[i].label < b.steps[i].label;
      if (a.steps[i].assoc != b.steps[i].assoc) return a.steps[i].assoc < b.steps[i].assoc;
    }
    return a.steps.size() < b.steps.size();
  }
};

/// Bounded collection of the `limit` best certainties seen so far; lets the
/// depth-first walks drop partial paths that can no longer place.
class Dominance {
 public:
  explicit Dominance(std::size_t limit) : limit_(limit) {}

  bool hopeless(double c) const {
    return limit_ == 0 || (best_.size() == limit_ && c < best_.top());
  }

  void record(double c) {
    best_.push(c);
    if (best_.size() > limit_) best_.pop();
  }

 private:
  std::size_t limit_;
  std::priority_queue<double, std::vector<double>, std::greater<>> best_;
};

std::vector<Story> finish(const Graph& g, std::vector<Story> stories, std::size_t limit) {
  std::sort(stories.begin(), stories.end(), StoryOrder{&g});
  if (stories.size() > limit) stories.resize(limit);
  return stories;
}

Story make_story(const std::vector<StoryStep>& steps, double c, StoryMode mode) {
  Story s;
  s.axioms = {steps.front().from};
  s.conclusion = steps.back().to;
  s.steps = steps;
  s.certainty = c;
  s.mode = mode;
  return s;
}

/// Chaining rule shared by every walk: a non-propagating alias may only make
/// up a one-hop story.
bool may_extend(const Graph& g, const std::vector<StoryStep>& path, const StoryStep& next) {
  if (path.empty()) return true;
  return propagates(g, next) && propagates(g, path.front()) && propagates(g, path.back());
}

}  // namespace

std::vector<Story> story_search(const ActiveView& view, ConceptId subject, const SearchOptions& options) {
  const Graph& g = view.graph();
  g.concept_at(subject);
  if (options.max_depth == 0) throw Error(ErrorKind::invalid_input, "max_depth must be at least 1");
  const double beta = g.params().beta;

  std::vector<Story> found;
  Dominance dominance(options.limit);
  std::vector<StoryStep> path;
  std::set<ConceptId> visited{subject};

  std::function<void(ConceptId, double)> walk = [&](ConceptId u, double c) {
    std::vector<StoryStep> next;
    for (auto& s : forward_steps(view, u)) {
      if (visited.contains(s.to)) continue;
      if (options.mode == StoryMode::strict && !path.empty() && s.type != path.front().type) continue;
      if (!may_extend(g, path, s)) continue;
      next.push_back(std::move(s));
    }
    if (!path.empty() && (path.size() == options.max_depth || next.empty())) {
      if (!dominance.hopeless(c)) {
        dominance.record(c);
        found.push_back(make_story(path, c, options.mode));
      }
      return;
    }
    for (auto& s : next) {
      const double c2 = c * s.weight * beta;
      if (dominance.hopeless(c2)) continue;
      visited.insert(s.to);
      path.push_back(s);
      walk(s.to, c2);
      path.pop_back();
      visited.erase(s.to);
    }
  };
  walk(subject, 1.0);
  return finish(g, std::move(found), options.limit);
}

std::vector<Story> explain(const ActiveView& view, ConceptId c, std::size_t depth, std::size_t limit) {
  const Graph& g = view.graph();
  g.concept_at(c);
  const double beta = g.params().beta;

  std::vector<Story> found;
  Dominance dominance(limit);
  // Built conclusion-first; reversed on emission.
  std::vector<StoryStep> rev;
  std::set<ConceptId> visited{c};

  std::function<void(ConceptId, double)> walk = [&](ConceptId u, double cert) {
    if (rev.size() == depth) return;
    for (auto& s : backward_steps(view, u)) {
      if (visited.contains(s.from)) continue;
      std::vector<StoryStep> forward(rev.rbegin(), rev.rend());
      if (!rev.empty() && !may_extend(g, forward, s)) continue;
      const double c2 = cert * s.weight * beta;
      if (dominance.hopeless(c2)) continue;
      rev.push_back(s);
      visited.insert(s.from);
      dominance.record(c2);
      found.push_back(make_story(std::vector<StoryStep>(rev.rbegin(), rev.rend()), c2,
                                 StoryMode::narrative));
      walk(s.from, c2);
      visited.erase(s.from);
      rev.pop_back();
    }
  };
  walk(c, 1.0);
  return finish(g, std::move(found), limit);
}

std::vector<Story> answer(const ActiveView& view, const std::set<ConceptId>& query,
                          std::size_t max_depth, std::size_t limit) {
  const Graph& g = view.graph();
  if (query.empty()) throw Error(ErrorKind::invalid_input, "a question needs at least one concept");
  for (ConceptId c : query) g.concept_at(c);
  if (max_depth == 0) return {};
  if (query.size() == 1) {
    return story_search(view, *query.begin(), SearchOptions{StoryMode::narrative, max_depth, limit});
  }
  const double beta = g.params().beta;

  std::vector<Story> found;
  Dominance dominance(limit);
  std::vector<StoryStep> path;
  std::set<ConceptId> visited;

  std::function<void(ConceptId, double, std::size_t)> walk = [&](ConceptId u, double c,
                                                                 std::size_t covered) {
    if (covered == query.size()) {
      dominance.record(c);
      found.push_back(make_story(path, c, StoryMode::narrative));
      return;
    }
    if (path.size() == max_depth) return;
    for (auto& s : forward_steps(view, u)) {
      if (visited.contains(s.to) || !may_extend(g, path, s)) continue;
      const double c2 = c * s.weight * beta;
      if (dominance.hopeless(c2)) continue;
      visited.insert(s.to);
      path.push_back(s);
      walk(s.to, c2, covered + (query.contains(s.to) ? 1 : 0));
      path.pop_back();
      visited.erase(s.to);
    }
  };
  for (ConceptId start : query) {
    visited = {start};
    walk(start, 1.0, 1);
  }
  return finish(g, std::move(found), limit);
}

namespace {

std::vector<Ranked> rank(const Graph& g, const std::map<ConceptId, double>& scores) {
  std::vector<Ranked> out;
  for (const auto& [c, s] : scores) out.push_back(Ranked{c, s});
  std::sort(out.begin(), out.end(), [&](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return g.concept_at(a.concept_id).name < g.concept_at(b.concept_id).name;
  });
  return out;
}

/// Best chained certainty to every concept reachable from `c` along steps
/// whose reading satisfies `accept`.
std::vector<Ranked> closure(const ActiveView& view, ConceptId c, std::size_t max_depth,
                            const std::function<bool(STType)>& accept) {
  const Graph& g = view.graph();
  g.concept_at(c);
  const double beta = g.params().beta;
  std::map<ConceptId, double> best;
  std::vector<StoryStep> path;
  std::set<ConceptId> visited{c};

  std::function<void(ConceptId, double)> walk = [&](ConceptId u, double cert) {
    if (path.size() == max_depth) return;
    for (const Neighbor& n : view.neighbors(u)) {
      if (!view.traversable(n.assoc) || !accept(n.type) || visited.contains(n.other)) continue;
      StoryStep s{u, n.other, n.assoc, n.label, n.type, n.weight};
      if (!may_extend(g, path, s)) continue;
      const double c2 = cert * n.weight * beta;
      auto [it, fresh] = best.emplace(n.other, c2);
      if (!fresh) it->second = std::max(it->second, c2);
      visited.insert(n.other);
      path.push_back(std::move(s));
      walk(n.other, c2);
      path.pop_back();
      visited.erase(n.other);
    }
  };
  walk(c, 1.0);
  return rank(g, best);
}

}  // namespace

std::vector<Ranked> induce(const ActiveView& view, ConceptId c, std::size_t max_depth) {
  return closure(view, c, max_depth, [](STType t) {
    return t == make_type(Kind::contains, Direction::reciprocal);
  });
}

std::vector<Ranked> deduce(const ActiveView& view, ConceptId c, std::size_t max_depth) {
  return closure(view, c, max_depth, [](STType t) {
    return t == make_type(Kind::contains, Direction::forward) ||
           t == make_type(Kind::expresses, Direction::forward);
  });
}

std::vector<Ranked> abduce(const ActiveView& view, const std::vector<std::string>& tokens) {
  const Graph& g = view.graph();
  const STType characterizes = make_type(Kind::expresses, Direction::reciprocal);
  std::map<ConceptId, double> scores;
  for (const auto& token : tokens) {
    auto id = g.find(token);
    if (!id) continue;
    for (const Neighbor& n : view.neighbors(*id)) {
      if (view.traversable(n.assoc) && n.type == characterizes) scores[n.other] += n.weight;
    }
  }
  return rank(g, scores);
}

std::vector<Ranked> lateral(const ActiveView& view, ConceptId c) {
  const Graph& g = view.graph();
  const double beta = g.params().beta;
  std::map<ConceptId, double> scores;
  for (const Neighbor& n : view.neighbors(c)) {
    if (!view.traversable(n.assoc) || n.type != make_type(Kind::near, Direction::forward)) continue;
    auto [it, fresh] = scores.emplace(n.other, n.weight * beta);
    if (!fresh) it->second = std::max(it->second, n.weight * beta);
  }
  return rank(g, scores);
}

}  // namespace sst

#include "sst/context.hpp"

#include <algorithm>

#include "sst/error.hpp"
#include "sst/learning.hpp"

namespace sst {

namespace {

bool heavier(const std::pair<std::string, double>& x, const std::pair<std::string, double>& y) {
  if (x.second != y.second) return x.second > y.second;
  return x.first < y.first;
}

std::vector<std::pair<std::string, double>> ranked(const ContextState& state) {
  std::vector<std::pair<std::string, double>> out(state.entries.begin(), state.entries.end());
  std::sort(out.begin(), out.end(), heavier);
  return out;
}

double entropy_of_weights(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (weights.empty() || total <= 0.0) return 0.0;
  std::vector<double> p;
  p.reserve(weights.size());
  for (double w : weights) p.push_back(w / total);
  // Renormalize against rounding so the distribution check holds.
  double sum = 0.0;
  for (double x : p) sum += x;
  for (double& x : p) x /= sum;
  return shannon_entropy(p, 2.0);
}

}  // namespace

ContextState observe(ContextState state, const std::vector<std::string>& tokens, double ell) {
  if (!(ell > 0.0 && ell < 1.0)) throw Error(ErrorKind::invalid_input, "ell must lie in (0,1)");
  for (auto& [token, w] : state.entries) w *= ell;
  for (const auto& raw : tokens) {
    std::string t = normalize_token(raw);
    if (!t.empty()) state.entries[t] = 1.0;
  }
  std::erase_if(state.entries, [&](const auto& kv) { return kv.second < state.epsilon; });
  if (state.entries.size() > state.capacity) {
    auto order = ranked(state);
    for (std::size_t i = state.capacity; i < order.size(); ++i) state.entries.erase(order[i].first);
  }
  return state;
}

std::vector<std::string> dominant_tokens(const ContextState& state, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& [token, w] : ranked(state)) {
    if (out.size() == k) break;
    out.push_back(token);
  }
  return out;
}

std::vector<AssocId> co_activate(Graph& graph, const ConcurrentInterval& interval,
                                 const ContextState& state, std::size_t dominant) {
  for (ConceptId c : interval.activated) graph.concept_at(c);
  if (!graph.find_alias(kCoActivationAlias)) {
    graph.register_alias(kCoActivationAlias, make_type(Kind::near, Direction::forward));
  }
  const ContextSet stamp = make_context_set(dominant_tokens(state, dominant));
  std::vector<AssocId> touched;
  for (auto i = interval.activated.begin(); i != interval.activated.end(); ++i) {
    for (auto j = std::next(i); j != interval.activated.end(); ++j) {
      touched.push_back(graph.associate(*i, kCoActivationAlias, *j, stamp, Provenance::co_activation));
    }
  }
  return touched;
}

std::tuple<ConceptId, ConceptId, Kind> canonical_claim(const Graph& graph, const Association& a) {
  const STType t = graph.alias_of(a).type;
  if (t.kind == Kind::near) return {std::min(a.from, a.to), std::max(a.from, a.to), t.kind};
  if (t.direction == Direction::reciprocal) return {a.to, a.from, t.kind};
  return {a.from, a.to, t.kind};
}

ActiveView::ActiveView(const Graph& graph, const ContextState& state) : graph_(&graph) {
  std::set<std::tuple<ConceptId, ConceptId, Kind>> denied;
  for (const auto& [id, a] : graph.associations()) {
    const bool on = a.contexts.empty() ||
                    std::any_of(a.contexts.begin(), a.contexts.end(),
                                [&](const std::string& t) { return state.contains(t); });
    if (!on) continue;
    visible_.insert(id);
    if (graph.alias_of(a).type.negated) denied.insert(canonical_claim(graph, a));
  }
  if (denied.empty()) return;
  for (AssocId id : visible_) {
    const Association& a = graph.association(id);
    if (!graph.alias_of(a).type.negated && denied.contains(canonical_claim(graph, a))) {
      suppressed_.insert(id);
    }
  }
}

bool ActiveView::traversable(AssocId id) const {
  if (!contains(id) || suppressed(id)) return false;
  return !graph_->alias_of(graph_->association(id)).type.negated;
}

std::vector<Neighbor> ActiveView::neighbors(ConceptId c, const NeighborFilter& filter) const {
  auto all = graph_->neighbors(c, filter);
  std::erase_if(all, [&](const Neighbor& n) { return !contains(n.assoc); });
  return all;
}

EntropyRatio context_knowledge_ratio(const Graph& graph, const ContextState& state) {
  std::vector<double> cw;
  for (const auto& [t, w] : state.entries) cw.push_back(w);
  std::vector<double> aw;
  for (const auto& [id, a] : graph.associations()) aw.push_back(a.weight);
  EntropyRatio out;
  out.context_entropy = entropy_of_weights(cw);
  out.knowledge_entropy = entropy_of_weights(aw);
  if (out.knowledge_entropy > 0.0) out.ratio = out.context_entropy / out.knowledge_entropy;
  return out;
}

}  // namespace sst

#include "sst/learning.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <vector>

#include "sst/error.hpp"
#include "sst/graph.hpp"

namespace sst {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::invalid_input, std::string(what) + " must lie in [0,1]");
}

void require_open_unit(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::invalid_input, std::string(what) + " must lie in (0,1)");
}

void require_distribution(std::span<const double> d) {
  double sum = 0.0;
  for (double p : d) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_input, "negative probability");
    sum += p;
  }
  if (d.empty() || std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::invalid_input, "probabilities must sum to 1");
}

}  // namespace

void validate(const LearningParams& params) {
  require_open_unit(params.ell, "ell");
  require_open_unit(params.beta, "beta");
  if (!(params.log_base > 1.0)) throw Error(ErrorKind::invalid_input, "log base must exceed 1");
}

double learn_update(double prev, double sample, double ell) {
  require_unit(prev, "previous value");
  require_unit(sample, "sample");
  require_unit(ell, "ell");
  return (1.0 - ell) * sample + ell * prev;
}

double decay_factor(Tick age, double ell) {
  return std::pow(ell, static_cast<double>(age));
}

double reinforce(Graph& graph, AssocId id, const LearningParams& params, Tick now) {
  const Association& a = graph.association(id);
  const Tick age = elapsed(a.last_tick, now, graph.clock().t_max);
  const double effective = a.weight * decay_factor(age, params.ell);
  const double next = learn_update(effective, 1.0, params.ell);
  graph.update_weight(id, next, now);
  return next;
}

std::size_t anneal(Graph& graph, double lambda) {
  require_unit(lambda, "lambda");
  const auto& assocs = graph.associations();

  std::map<ConceptId, std::vector<AssocId>> at;
  for (const auto& [id, a] : assocs) {
    at[a.from].push_back(id);
    at[a.to].push_back(id);
  }

  std::map<AssocId, double> next;
  for (const auto& [id, a] : assocs) {
    double sum = 0.0;
    std::size_t n = 0;
    for (ConceptId end : {a.from, a.to}) {
      for (AssocId other : at[end]) {
        if (other == id) continue;
        sum += assocs.at(other).weight;
        ++n;
      }
    }
    if (n == 0) continue;
    next[id] = (1.0 - lambda) * a.weight + lambda * (sum / static_cast<double>(n));
  }

  std::size_t changed = 0;
  for (const auto& [id, w] : next) {
    const Association& a = graph.association(id);
    if (w != a.weight) {
      graph.update_weight(id, std::clamp(w, 0.0, 1.0), a.last_tick);
      ++changed;
    }
  }
  return changed;
}

double shannon_entropy(std::span<const double> distribution, double base) {
  require_distribution(distribution);
  if (!(base > 1.0)) throw Error(ErrorKind::invalid_input, "log base must exceed 1");
  double h = 0.0;
  for (double p : distribution) {
    if (p > 0.0) h -= p * std::log(p);
  }
  h /= std::log(base);
  return h < 0.0 ? 0.0 : h;
}

double significance(std::span<const double> distribution, std::size_t alphabet_size) {
  require_distribution(distribution);
  std::size_t support = 0;
  for (double p : distribution) support += p > 0.0 ? 1 : 0;
  if (alphabet_size == 0 || alphabet_size < support)
    throw Error(ErrorKind::invalid_input, "alphabet smaller than the distribution's support");
  const double s = std::log2(static_cast<double>(alphabet_size)) - shannon_entropy(distribution, 2.0);
  return s < 0.0 ? 0.0 : s;
}

std::size_t hamming(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) throw Error(ErrorKind::invalid_input, "hamming distance needs equal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

std::optional<std::size_t> hop_distance(const Graph& graph, ConceptId a, ConceptId b,
                                        const NeighborFilter* filter) {
  graph.concept_at(a);
  graph.concept_at(b);
  if (a == b) return 0;
  const NeighborFilter none;
  std::map<ConceptId, std::size_t> dist{{a, 0}};
  std::deque<ConceptId> queue{a};
  while (!queue.empty()) {
    const ConceptId u = queue.front();
    queue.pop_front();
    for (const Neighbor& n : graph.neighbors(u, filter ? *filter : none)) {
      if (dist.contains(n.other)) continue;
      dist[n.other] = dist[u] + 1;
      if (n.other == b) return dist[n.other];
      queue.push_back(n.other);
    }
  }
  return std::nullopt;
}

bool nyquist_ok(Tick sample_interval, Tick change_interval) {
  if (sample_interval == 0 || change_interval == 0)
    throw Error(ErrorKind::invalid_input, "intervals must be at least one tick");
  return change_interval >= 2 * sample_interval;
}

}  // namespace sst

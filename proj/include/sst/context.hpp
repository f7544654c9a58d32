#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sst/clock.hpp"
#include "sst/graph.hpp"

namespace sst {

/// Short-term "state of now": recently observed tokens with a freshness
/// weight that decays geometrically until it drops below `epsilon`.
struct ContextState {
  std::map<std::string, double> entries;
  std::size_t capacity = 256;
  double epsilon = 1e-3;

  bool contains(const std::string& token) const { return entries.contains(token); }
  bool operator==(const ContextState&) const = default;
};

/// Multiplies every weight by `ell`, refreshes `tokens` to 1.0, then evicts
/// entries below epsilon and the weakest entries beyond capacity.
ContextState observe(ContextState state, const std::vector<std::string>& tokens, double ell);

/// The `k` heaviest tokens, ties broken by token order.
std::vector<std::string> dominant_tokens(const ContextState& state, std::size_t k);

/// Concepts seen within one coarse tick.
struct ConcurrentInterval {
  Tick tick = 0;
  std::set<ConceptId> activated;
};

inline constexpr std::size_t kDominantContext = 4;
inline constexpr const char* kCoActivationAlias = "is close to";

/// Creates or reinforces a NEAR edge for every unordered pair in the interval,
/// stamped with the dominant context tokens. Returns the touched edge ids in
/// pair order.
std::vector<AssocId> co_activate(Graph& graph, const ConcurrentInterval& interval,
                                 const ContextState& state,
                                 std::size_t dominant = kDominantContext);

/// The associations switched on by a context: unconditional edges plus those
/// whose context set meets the live tokens. A visible negated edge suppresses
/// positive edges with the same endpoints and kind (in either reading) for
/// traversal; both stay stored.
class ActiveView {
 public:
  ActiveView(const Graph& graph, const ContextState& state);

  const Graph& graph() const { return *graph_; }
  const std::set<AssocId>& associations() const { return visible_; }

  bool contains(AssocId id) const { return visible_.contains(id); }
  bool suppressed(AssocId id) const { return suppressed_.contains(id); }
  /// Visible, positive and not vetoed by a visible negation.
  bool traversable(AssocId id) const;

  std::vector<Neighbor> neighbors(ConceptId c, const NeighborFilter& filter = {}) const;

 private:
  const Graph* graph_;
  std::set<AssocId> visible_;
  std::set<AssocId> suppressed_;
};

/// (from, to, kind) with reciprocal readings flipped to forward and NEAR
/// endpoints ordered; two edges with the same key make the same claim.
std::tuple<ConceptId, ConceptId, Kind> canonical_claim(const Graph& graph, const Association& a);

struct EntropyRatio {
  double context_entropy = 0.0;
  double knowledge_entropy = 0.0;
  std::optional<double> ratio;
};

/// Entropy (bits) of the normalized context weights against that of the
/// normalized association weights. Diagnostic only.
EntropyRatio context_knowledge_ratio(const Graph& graph, const ContextState& state);

}  // namespace sst

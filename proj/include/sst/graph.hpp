#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "sst/clock.hpp"
#include "sst/learning.hpp"
#include "sst/types.hpp"

namespace sst {

struct Concept {
  ConceptId id = 0;
  std::string name;
  Tick created_tick = 0;

  bool operator==(const Concept&) const = default;
};

/// A human-readable association name bound to one canonical type.
///
/// `reciprocal` names the alias used when the edge is read from its target
/// end; empty means fall back to default_label(reciprocal_of(type)).
/// Non-propagating aliases ("is father to") never chain beyond one hop.
struct Alias {
  std::string name;
  STType type;
  bool propagating = true;
  std::string reciprocal;

  bool operator==(const Alias&) const = default;
};

/// Normalized context tokens; empty means unconditional.
using ContextSet = std::set<std::string>;

struct Association {
  AssocId id = 0;
  ConceptId from = 0;
  ConceptId to = 0;
  std::string alias;
  ContextSet contexts;
  double weight = 0.0;
  Tick last_tick = 0;
  Provenance provenance = Provenance::reported;

  bool operator==(const Association&) const = default;
};

/// Starting weight of a fresh edge, by how it was acquired.
struct InitialWeights {
  double asserted = 0.5;
  double co_activation = 0.1;
  double inferred = 0.3;

  double for_provenance(Provenance p) const;
  bool operator==(const InitialWeights&) const = default;
};

/// One incident edge as seen from a concept. Incoming edges carry the
/// reciprocal label and type.
struct Neighbor {
  ConceptId other = 0;
  AssocId assoc = 0;
  std::string label;
  STType type;
  bool outgoing = true;
  double weight = 0.0;
};

struct NeighborFilter {
  std::optional<Kind> kind;
  std::optional<Direction> direction;
  std::optional<bool> negated;
  std::optional<std::string> label;
  std::optional<std::string> context;

  bool accepts(const Neighbor& n, const Association& a) const;
};

/// Name used for a type that has no registered alias on the reading side.
std::string default_label(STType t);

/// The concept/association store.
///
/// Concepts and associations are keyed by monotonically increasing ids that
/// are never reused. At most one association exists per
/// (from, to, alias, contexts); asserting it again reinforces it. NEAR edges
/// are stored with from < to.
class Graph {
 public:
  Graph() = default;
  explicit Graph(LearningParams params) : params_(params) { validate(params_); }

  ConceptId add_concept(std::string_view name);
  /// Drops the concept and every edge touching it.
  void remove_concept(ConceptId id);
  const Concept& concept_at(ConceptId id) const;
  std::optional<ConceptId> find(std::string_view name) const;
  /// find() or throw not_found.
  ConceptId require(std::string_view name) const;
  bool contains(ConceptId id) const { return concepts_.contains(id); }

  /// Registers `name` (and optionally its reciprocal reading). Re-registering
  /// with the same type updates the propagating flag; a different type is a
  /// conflict.
  const Alias& register_alias(std::string_view name, STType type, bool propagating = true,
                              std::string_view reciprocal = {});
  const Alias* find_alias(std::string_view name) const;
  const Alias& alias_at(std::string_view name) const;
  /// Label an edge shows when read from its target end.
  std::string reciprocal_label(const Alias& alias) const;

  AssocId associate(ConceptId from, std::string_view alias, ConceptId to,
                    const ContextSet& contexts = {},
                    Provenance provenance = Provenance::reported);
  std::optional<AssocId> find_association(ConceptId from, std::string_view alias, ConceptId to,
                                          const ContextSet& contexts = {}) const;
  const Association& association(AssocId id) const;
  bool has_association(AssocId id) const { return assocs_.contains(id); }
  const Alias& alias_of(const Association& a) const { return alias_at(a.alias); }

  void set_weight(AssocId id, double weight);
  /// Used by the learning kernel: stores an already-computed weight and stamp.
  void update_weight(AssocId id, double weight, Tick stamp);

  std::vector<Neighbor> neighbors(ConceptId c, const NeighborFilter& filter = {}) const;

  const std::map<ConceptId, Concept>& concepts() const { return concepts_; }
  const std::map<AssocId, Association>& associations() const { return assocs_; }
  const std::map<std::string, Alias, std::less<>>& aliases() const { return aliases_; }
  std::size_t concept_count() const { return concepts_.size(); }
  std::size_t edge_count() const { return assocs_.size(); }

  EpochClock& clock() { return clock_; }
  const EpochClock& clock() const { return clock_; }
  Tick now() const { return clock_.t; }

  LearningParams& params() { return params_; }
  const LearningParams& params() const { return params_; }
  InitialWeights& initial_weights() { return initial_; }
  const InitialWeights& initial_weights() const { return initial_; }

  ConceptId next_concept_id() const { return next_concept_; }
  AssocId next_assoc_id() const { return next_assoc_; }

  // Persistence hooks: rebuild a graph record by record. They check the
  // same invariants as the public mutators but keep the stored ids.
  void restore_counters(ConceptId next_concept, AssocId next_assoc);
  void restore_concept(const Concept& c);
  void restore_alias(const Alias& a);
  void restore_association(const Association& a);

  bool operator==(const Graph& other) const;

 private:
  using Key = std::tuple<ConceptId, ConceptId, std::string, ContextSet>;

  void index(const Association& a);
  void unindex(const Association& a);

  std::map<ConceptId, Concept> concepts_;
  std::map<std::string, ConceptId, std::less<>> by_name_;
  std::map<std::string, Alias, std::less<>> aliases_;
  std::map<AssocId, Association> assocs_;
  std::map<Key, AssocId> by_key_;
  std::map<ConceptId, std::set<AssocId>> incident_;
  ConceptId next_concept_ = 1;
  AssocId next_assoc_ = 1;
  EpochClock clock_;
  LearningParams params_;
  InitialWeights initial_;
};

ContextSet make_context_set(const std::vector<std::string>& tokens);

}  // namespace sst

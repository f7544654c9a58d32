#include "sst/graph.hpp"

#include <algorithm>

#include "sst/error.hpp"

namespace sst {

double InitialWeights::for_provenance(Provenance p) const {
  switch (p) {
    case Provenance::co_activation: return co_activation;
    case Provenance::inferred: return inferred;
    default: return asserted;
  }
}

std::string default_label(STType t) {
  std::string base;
  switch (t.kind) {
    case Kind::near: base = "is close to"; break;
    case Kind::follows: base = t.direction == Direction::forward ? "follows" : "precedes"; break;
    case Kind::contains:
      base = t.direction == Direction::forward ? "contains" : "is a part of";
      break;
    case Kind::expresses:
      base = t.direction == Direction::forward ? "expresses" : "is expressed by";
      break;
  }
  return t.negated ? "not (" + base + ")" : base;
}

bool NeighborFilter::accepts(const Neighbor& n, const Association& a) const {
  if (kind && n.type.kind != *kind) return false;
  if (direction && n.type.direction != *direction) return false;
  if (negated && n.type.negated != *negated) return false;
  if (label && n.label != *label) return false;
  if (context && !a.contexts.contains(normalize_token(*context))) return false;
  return true;
}

ContextSet make_context_set(const std::vector<std::string>& tokens) {
  ContextSet out;
  for (const auto& t : tokens) {
    std::string n = normalize_token(t);
    if (!n.empty()) out.insert(std::move(n));
  }
  return out;
}

ConceptId Graph::add_concept(std::string_view name) {
  std::string trimmed = trim(name);
  if (trimmed.empty()) throw Error(ErrorKind::invalid_input, "concept name is empty");
  if (auto it = by_name_.find(trimmed); it != by_name_.end()) return it->second;
  const ConceptId id = next_concept_++;
  concepts_.emplace(id, Concept{id, trimmed, clock_.t});
  by_name_.emplace(std::move(trimmed), id);
  return id;
}

void Graph::remove_concept(ConceptId id) {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) throw Error(ErrorKind::not_found, "unknown concept id " + std::to_string(id));
  if (auto inc = incident_.find(id); inc != incident_.end()) {
    const std::set<AssocId> edges = inc->second;
    for (AssocId e : edges) {
      const Association a = assocs_.at(e);
      unindex(a);
      assocs_.erase(e);
    }
  }
  incident_.erase(id);
  by_name_.erase(it->second.name);
  concepts_.erase(it);
}

const Concept& Graph::concept_at(ConceptId id) const {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) throw Error(ErrorKind::not_found, "unknown concept id " + std::to_string(id));
  return it->second;
}

std::optional<ConceptId> Graph::find(std::string_view name) const {
  auto it = by_name_.find(trim(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ConceptId Graph::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorKind::not_found, "unknown concept '" + std::string(name) + "'");
}

const Alias& Graph::register_alias(std::string_view name, STType type, bool propagating,
                                   std::string_view reciprocal) {
  type = make_type(type.kind, type.direction, type.negated);
  std::string key = trim(name);
  std::string recip = trim(reciprocal);
  if (key.empty()) throw Error(ErrorKind::invalid_input, "alias name is empty");
  if (recip == key && type.kind != Kind::near)
    throw Error(ErrorKind::invalid_input, "alias '" + key + "' cannot be its own reciprocal");

  auto check = [&](const std::string& n, STType t) {
    if (auto it = aliases_.find(n); it != aliases_.end() && it->second.type != t) {
      throw Error(ErrorKind::conflict, "alias '" + n + "' is already registered as " +
                                           to_string(it->second.type));
    }
  };
  check(key, type);
  if (!recip.empty()) check(recip, reciprocal_of(type));

  Alias& a = aliases_[key];
  a.name = key;
  a.type = type;
  a.propagating = propagating;
  if (!recip.empty()) a.reciprocal = recip;

  if (!recip.empty() && recip != key) {
    Alias& r = aliases_[recip];
    const bool fresh = r.name.empty();
    r.name = recip;
    r.type = reciprocal_of(type);
    if (fresh || r.reciprocal.empty()) r.reciprocal = key;
    r.propagating = propagating;
  }
  return aliases_.at(key);
}

const Alias* Graph::find_alias(std::string_view name) const {
  auto it = aliases_.find(trim(name));
  return it == aliases_.end() ? nullptr : &it->second;
}

const Alias& Graph::alias_at(std::string_view name) const {
  if (const Alias* a = find_alias(name)) return *a;
  throw Error(ErrorKind::unknown_alias, "unknown alias '" + std::string(name) + "'");
}

std::string Graph::reciprocal_label(const Alias& alias) const {
  if (!alias.reciprocal.empty()) return alias.reciprocal;
  if (alias.type.kind == Kind::near) return alias.name;
  return default_label(reciprocal_of(alias.type));
}

std::optional<AssocId> Graph::find_association(ConceptId from, std::string_view alias,
                                               ConceptId to, const ContextSet& contexts) const {
  auto it = by_key_.find(Key{from, to, std::string(alias), contexts});
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

AssocId Graph::associate(ConceptId from, std::string_view alias_name, ConceptId to,
                         const ContextSet& contexts, Provenance provenance) {
  concept_at(from);
  concept_at(to);
  const Alias* alias = &alias_at(alias_name);
  if (from == to) throw Error(ErrorKind::invalid_input, "an association cannot loop on one concept");

  // NEAR is symmetric: keep one stored orientation, read from the other end
  // through the reciprocal name.
  if (alias->type.kind == Kind::near && from > to) {
    std::swap(from, to);
    if (const Alias* r = find_alias(reciprocal_label(*alias)); r && r->type == alias->type) {
      alias = r;
    }
  }
  ContextSet normalized;
  for (const auto& c : contexts) {
    std::string n = normalize_token(c);
    if (!n.empty()) normalized.insert(std::move(n));
  }

  if (auto existing = find_association(from, alias->name, to, normalized)) {
    reinforce(*this, *existing, params_, clock_.t);
    return *existing;
  }
  const AssocId id = next_assoc_++;
  Association a{id, from, to, alias->name, std::move(normalized),
                initial_.for_provenance(provenance), clock_.t, provenance};
  index(a);
  assocs_.emplace(id, std::move(a));
  return id;
}

const Association& Graph::association(AssocId id) const {
  auto it = assocs_.find(id);
  if (it == assocs_.end()) throw Error(ErrorKind::not_found, "unknown association id " + std::to_string(id));
  return it->second;
}

void Graph::set_weight(AssocId id, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw Error(ErrorKind::invalid_input, "weight must lie in [0,1]");
  association(id);
  assocs_.at(id).weight = weight;
}

void Graph::update_weight(AssocId id, double weight, Tick stamp) {
  set_weight(id, weight);
  assocs_.at(id).last_tick = stamp;
}

std::vector<Neighbor> Graph::neighbors(ConceptId c, const NeighborFilter& filter) const {
  concept_at(c);
  std::vector<Neighbor> out;
  auto inc = incident_.find(c);
  if (inc == incident_.end()) return out;
  for (AssocId id : inc->second) {
    const Association& a = assocs_.at(id);
    const Alias& alias = alias_at(a.alias);
    Neighbor n;
    n.assoc = id;
    n.weight = a.weight;
    if (a.from == c) {
      n.other = a.to;
      n.label = alias.name;
      n.type = alias.type;
      n.outgoing = true;
    } else {
      n.other = a.from;
      n.label = reciprocal_label(alias);
      n.type = reciprocal_of(alias.type);
      n.outgoing = false;
    }
    if (filter.accepts(n, a)) out.push_back(std::move(n));
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
    return std::tie(x.other, x.label, x.assoc) < std::tie(y.other, y.label, y.assoc);
  });
  return out;
}

void Graph::index(const Association& a) {
  by_key_.emplace(Key{a.from, a.to, a.alias, a.contexts}, a.id);
  incident_[a.from].insert(a.id);
  incident_[a.to].insert(a.id);
}

void Graph::unindex(const Association& a) {
  by_key_.erase(Key{a.from, a.to, a.alias, a.contexts});
  for (ConceptId end : {a.from, a.to}) {
    if (auto it = incident_.find(end); it != incident_.end()) {
      it->second.erase(a.id);
      if (it->second.empty()) incident_.erase(it);
    }
  }
}

void Graph::restore_counters(ConceptId next_concept, AssocId next_assoc) {
  if (!concepts_.empty() && next_concept <= concepts_.rbegin()->first)
    throw Error(ErrorKind::invalid_input, "concept counter behind stored ids");
  if (!assocs_.empty() && next_assoc <= assocs_.rbegin()->first)
    throw Error(ErrorKind::invalid_input, "association counter behind stored ids");
  next_concept_ = next_concept;
  next_assoc_ = next_assoc;
}

void Graph::restore_concept(const Concept& c) {
  if (c.id == 0) throw Error(ErrorKind::invalid_input, "concept id 0 is reserved");
  if (trim(c.name).empty() || trim(c.name) != c.name)
    throw Error(ErrorKind::invalid_input, "bad concept name '" + c.name + "'");
  if (concepts_.contains(c.id) || by_name_.contains(c.name))
    throw Error(ErrorKind::conflict, "duplicate concept '" + c.name + "'");
  concepts_.emplace(c.id, c);
  by_name_.emplace(c.name, c.id);
  next_concept_ = std::max(next_concept_, c.id + 1);
}

void Graph::restore_alias(const Alias& a) {
  if (a.name.empty()) throw Error(ErrorKind::invalid_input, "alias name is empty");
  if (aliases_.contains(a.name)) throw Error(ErrorKind::conflict, "duplicate alias '" + a.name + "'");
  Alias copy = a;
  copy.type = make_type(a.type.kind, a.type.direction, a.type.negated);
  aliases_.emplace(copy.name, std::move(copy));
}

void Graph::restore_association(const Association& a) {
  if (a.id == 0) throw Error(ErrorKind::invalid_input, "association id 0 is reserved");
  if (assocs_.contains(a.id)) throw Error(ErrorKind::conflict, "duplicate association id");
  concept_at(a.from);
  concept_at(a.to);
  const Alias& alias = alias_at(a.alias);
  if (a.from == a.to) throw Error(ErrorKind::invalid_input, "self-loop association");
  if (alias.type.kind == Kind::near && a.from > a.to)
    throw Error(ErrorKind::invalid_input, "NEAR association not in canonical order");
  if (!(a.weight >= 0.0 && a.weight <= 1.0)) throw Error(ErrorKind::invalid_input, "weight out of range");
  if (by_key_.contains(Key{a.from, a.to, a.alias, a.contexts}))
    throw Error(ErrorKind::conflict, "duplicate association key");
  index(a);
  assocs_.emplace(a.id, a);
  next_assoc_ = std::max(next_assoc_, a.id + 1);
}

bool Graph::operator==(const Graph& other) const {
  return concepts_ == other.concepts_ && aliases_ == other.aliases_ &&
         assocs_ == other.assocs_ && next_concept_ == other.next_concept_ &&
         next_assoc_ == other.next_assoc_ && clock_ == other.clock_ &&
         params_ == other.params_ && initial_ == other.initial_;
}

}  // namespace sst

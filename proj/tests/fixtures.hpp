#pragma once

// Small graphs shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "sst/graph.hpp"
#include "sst/store.hpp"

namespace sst::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(SST_FIXTURE_DIR) + "/" + name;
}

/// Asserts `from alias to` and pins the weight.
inline AssocId link(Graph& g, const std::string& from, const std::string& alias, const std::string& to,
                    double weight = 1.0, const ContextSet& contexts = {}) {
  const AssocId id = g.associate(g.add_concept(from), alias, g.add_concept(to), contexts);
  g.set_weight(id, weight);
  return id;
}

/// crumbs stick to wool, which is liked by Sarah, a friend of Jane, who
/// visits the bakery where a theft occurred.
inline Graph jane_graph() {
  Graph g;
  install_seed_aliases(g);
  g.register_alias("stick to", make_type(Kind::near, Direction::forward));
  g.register_alias("is liked by", make_type(Kind::follows, Direction::forward), true, "likes");
  g.register_alias("friend of", make_type(Kind::near, Direction::forward));
  g.register_alias("visits", make_type(Kind::follows, Direction::forward), true, "is visited by");
  g.register_alias("occurrence of", make_type(Kind::follows, Direction::forward), true, "occurred at");
  link(g, "crumbs", "stick to", "wool");
  link(g, "wool", "is liked by", "Sarah");
  link(g, "Sarah", "friend of", "Jane");
  link(g, "Jane", "visits", "bakery");
  link(g, "bakery", "occurrence of", "theft");
  return g;
}

/// Fabian is father to Simon, who is father to Dawn.
inline Graph father_graph(bool propagating) {
  Graph g;
  install_seed_aliases(g);
  g.register_alias("is father to", make_type(Kind::follows, Direction::forward), propagating);
  link(g, "Fabian", "is father to", "Simon");
  link(g, "Simon", "is father to", "Dawn");
  return g;
}

/// Hot characterizes Spain | weather, Chilli | food.
inline Graph hot_graph() {
  Graph g;
  install_seed_aliases(g);
  link(g, "Hot", "characterizes", "Spain", 1.0, {"weather"});
  link(g, "Hot", "characterizes", "Chilli", 1.0, {"food"});
  link(g, "Hot", "characterizes", "Sarah", 1.0, {"sexual attraction"});
  return g;
}

}  // namespace sst::testing

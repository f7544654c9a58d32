// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sst/context.hpp"
#include "sst/coordinatizer.hpp"
#include "sst/error.hpp"
#include "sst/inference.hpp"
#include "sst/learning.hpp"
#include "sst/store.hpp"

using namespace sst;
using sst::testing::link;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kTol = 1e-9;
constexpr double kTimeBudgetSeconds = 1.0;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_binary(const std::string& cmd, int& status) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

template <class Fn>
double seconds(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome decay_law() {
  Outcome o;
  const double elapsed = seconds([&] {
    double w = 1.0;
    for (int r = 0; r < 10; ++r) w = learn_update(w, 0.0, 0.5);
    o.require(std::abs(w - 9.765625e-4) <= kExactTol, "iterated update gave " + std::to_string(w));
    o.require(std::abs(decay_factor(10, 0.5) - 9.765625e-4) <= kExactTol, "closed-form decay mismatch");
  });
  o.require(elapsed < kTimeBudgetSeconds, "too slow");
  return o;
}

Outcome golden_files() {
  Outcome o;
  const double elapsed = seconds([&] {
    const std::array<std::array<const char*, 3>, 2> cases{{
        {"service.json", "service.listing", "json"},
        {"mixed.txt", "mixed.listing", "mixed"},
    }};
    for (const auto& [input, listing, dialect] : cases) {
      int status = 0;
      const std::string got = run_binary(std::string(KB_BINARY) + " coordinatize --dialect " + dialect + " " +
                                             sst::testing::fixture_path(input),
                                         status);
      o.require(status == 0, std::string("kb coordinatize failed on ") + input);
      o.require(normalize_whitespace(got) == normalize_whitespace(slurp(sst::testing::fixture_path(listing))),
                std::string("listing differs for ") + input);
    }
  });
  o.require(elapsed < kTimeBudgetSeconds, "too slow");
  return o;
}

Outcome type_algebra() {
  Outcome o;
  const double elapsed = seconds([&] {
    const auto types = all_types();
    o.require(std::set<STType>(types.begin(), types.end()).size() == 14, "expected 14 canonical types");
    for (STType t : types) {
      o.require(reciprocal_of(reciprocal_of(t)) == t, "reciprocal is not an involution on " + to_string(t));
      o.require(negate_type(negate_type(t)) == t, "negation is not an involution on " + to_string(t));
      o.require(reciprocal_of(negate_type(t)) == negate_type(reciprocal_of(t)), "no commutation on " + to_string(t));
    }
  });
  o.require(elapsed < kTimeBudgetSeconds, "too slow");
  return o;
}

std::vector<std::string> path_names(const Graph& g, const Story& s) {
  std::vector<std::string> out;
  for (ConceptId c : s.path()) out.push_back(g.concept_at(c).name);
  return out;
}

Outcome jane() {
  Outcome o;
  const Graph g = sst::testing::jane_graph();
  o.require(g.params().beta == 0.75, "beta is not 0.75");
  const auto stories = story_search(ActiveView(g, {}), g.require("crumbs"), {StoryMode::narrative, 6, 10});
  o.require(!stories.empty(), "no stories");
  if (!o.ok) return o;
  const std::vector<std::string> want{"crumbs", "wool", "Sarah", "Jane", "bakery", "theft"};
  o.require(path_names(g, stories[0]) == want, "top story is " + describe(g, stories[0]));
  o.require(std::abs(stories[0].certainty - std::pow(0.75, 5)) <= kTol, "certainty " + std::to_string(stories[0].certainty));
  return o;
}

Outcome non_propagation() {
  Outcome o;
  Graph g = sst::testing::father_graph(false);
  auto two_hop = [&] {
    std::size_t n = 0;
    for (const Story& s : story_search(ActiveView(g, {}), g.require("Fabian"), {StoryMode::narrative, 6, 10})) {
      if (s.steps.size() == 2) ++n;
    }
    return n;
  };
  o.require(two_hop() == 0, "non-propagating alias chained");
  g.register_alias("is father to", make_type(Kind::follows, Direction::forward), true);
  o.require(two_hop() == 1, "propagating alias did not give exactly one 2-hop story");
  return o;
}

Outcome context_switching() {
  Outcome o;
  const Graph g = sst::testing::hot_graph();
  const ConceptId hot = g.require("Hot");
  const ConceptId spain = g.require("Spain");
  const AssocId edge = *g.find_association(hot, "characterizes", spain, {"weather"});
  auto reaches_spain = [&](const ContextState& ctx) {
    for (const Story& s : story_search(ActiveView(g, ctx), hot, {})) {
      if (s.conclusion == spain) return true;
    }
    return false;
  };
  const ContextState food = observe({}, {"food"}, 0.5);
  const ContextState weather = observe({}, {"weather"}, 0.5);
  o.require(!ActiveView(g, food).contains(edge), "edge visible under {food}");
  o.require(ActiveView(g, weather).contains(edge), "edge invisible under {weather}");
  for (int round = 0; round < 10; ++round) {
    o.require(!reaches_spain(food), "story available under {food}");
    o.require(reaches_spain(weather), "story missing under {weather}");
  }
  return o;
}

Outcome entropy_identities() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000 && o.ok; ++trial) {
    const std::size_t n = 1 + rng() % 32;
    std::vector<double> p(n);
    double total = 0;
    for (double& x : p) {
      // Some exact zeros so the 0 log 0 convention is exercised.
      x = (rng() % 5 == 0) ? 0.0 : u(rng);
      total += x;
    }
    if (total == 0.0) p[rng() % n] = total = 1.0;
    for (double& x : p) x /= total;
    const double h = shannon_entropy(p);
    const double cap = std::log2(static_cast<double>(n));
    o.require(h >= -kTol && h <= cap + kTol, "entropy out of range");
    o.require(std::abs(h + significance(p, n) - cap) <= kTol, "entropy + significance != log2 n");

    const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    o.require(std::abs(significance(uniform, n)) <= kTol, "uniform significance not 0");
    std::vector<double> degenerate(n, 0.0);
    degenerate[rng() % n] = 1.0;
    o.require(std::abs(significance(degenerate, n) - cap) <= kTol, "degenerate significance not log2 n");
  }
  return o;
}

Outcome co_activation() {
  Outcome o;
  std::mt19937 rng(8);
  for (std::size_t k = 0; k <= 8 && o.ok; ++k) {
    Graph g;
    std::vector<ConceptId> ids;
    for (std::size_t i = 0; i < 10; ++i) ids.push_back(g.add_concept("c" + std::to_string(i)));
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::vector<ConceptId> chosen(ids.begin(), ids.begin() + static_cast<long>(k));
    ConcurrentInterval interval{0, {chosen.begin(), chosen.end()}};

    // Brute force: every unordered pair of distinct members.
    std::set<std::pair<ConceptId, ConceptId>> pairs;
    for (ConceptId a : chosen) {
      for (ConceptId b : chosen) {
        if (a < b) pairs.insert({a, b});
      }
    }
    const ContextState ctx = observe({}, {"now"}, 0.5);
    co_activate(g, interval, ctx);

    auto near_pairs = [&] {
      std::set<std::pair<ConceptId, ConceptId>> out;
      for (const auto& [id, a] : g.associations()) {
        if (g.alias_of(a).type.kind == Kind::near) out.insert({std::min(a.from, a.to), std::max(a.from, a.to)});
      }
      return out;
    };
    o.require(g.edge_count() == k * (k - 1) / 2, "edge count for k=" + std::to_string(k));
    o.require(near_pairs() == pairs, "pairs differ for k=" + std::to_string(k));

    std::map<AssocId, double> before;
    for (const auto& [id, a] : g.associations()) before[id] = a.weight;
    co_activate(g, interval, ctx);
    o.require(g.edge_count() == k * (k - 1) / 2, "repetition changed the edge count");
    for (const auto& [id, a] : g.associations()) {
      o.require(before.contains(id) && a.weight >= before[id], "repetition lowered a weight");
    }
  }
  return o;
}

/// Applies one random mutation. Failures of the operation itself are expected
/// sometimes (e.g. conflicting alias) and leave the graph valid.
void random_op(KnowledgeBase& kb, std::mt19937& rng) {
  static const std::vector<std::string> words{"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"};
  static const std::vector<std::string> tokens{"home", "work", "rain", "sun"};
  Graph& g = kb.graph;
  std::vector<ConceptId> ids;
  for (const auto& [id, c] : g.concepts()) ids.push_back(id);
  std::vector<std::string> aliases;
  for (const auto& [name, a] : g.aliases()) aliases.push_back(name);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  try {
    switch (rng() % 9) {
      case 0:
      case 1:
        g.add_concept(words[rng() % words.size()] + std::to_string(rng() % 5));
        break;
      case 2:
      case 3: {
        if (ids.size() < 2 || aliases.empty()) break;
        ContextSet ctx;
        if (rng() % 3 == 0) ctx.insert(tokens[rng() % tokens.size()]);
        g.associate(ids[rng() % ids.size()], aliases[rng() % aliases.size()], ids[rng() % ids.size()], ctx,
                    static_cast<Provenance>(rng() % 5));
        break;
      }
      case 4:
        if (!ids.empty() && rng() % 3 == 0) g.remove_concept(ids[rng() % ids.size()]);
        break;
      case 5:
        if (!g.associations().empty()) {
          auto it = g.associations().begin();
          std::advance(it, static_cast<long>(rng() % g.associations().size()));
          if (rng() % 2) {
            g.set_weight(it->first, u(rng));
          } else {
            reinforce(g, it->first, g.params(), g.now());
          }
        }
        break;
      case 6:
        g.clock() = tick(g.clock());
        break;
      case 7:
        kb.context = observe(kb.context, {tokens[rng() % tokens.size()]}, g.params().ell);
        break;
      case 8:
        if (rng() % 2) {
          g.register_alias("rel" + std::to_string(rng() % 4), all_types()[rng() % 14], rng() % 2,
                           "rev" + std::to_string(rng() % 4));
        } else {
          anneal(g, u(rng));
        }
        break;
    }
  } catch (const Error&) {
  }
}

Outcome persistence() {
  Outcome o;
  std::mt19937 rng(99);
  const auto dir = std::filesystem::temp_directory_path() / "sst_acceptance";
  std::filesystem::create_directories(dir);
  std::size_t edges = 0, removals = 0, contexts = 0;
  for (int seq = 0; seq < 100 && o.ok; ++seq) {
    KnowledgeBase kb;
    if (seq % 2 == 0) install_seed_aliases(kb.graph);
    const std::size_t ops = rng() % 201;
    for (std::size_t i = 0; i < ops; ++i) random_op(kb, rng);
    edges += kb.graph.edge_count();
    removals += kb.graph.next_concept_id() - 1 - kb.graph.concept_count();
    contexts += kb.context.entries.size();

    const auto first = dir / "first.jsonl";
    const auto second = dir / "second.jsonl";
    save(kb, first);
    const KnowledgeBase back = load(first);
    o.require(back == kb, "load(save(g)) != g in sequence " + std::to_string(seq));
    save(back, second);
    o.require(slurp(first.string()) == slurp(second.string()), "re-save not byte-identical in sequence " + std::to_string(seq));
  }
  // Guard against a generator that only ever produces trivial stores.
  o.require(edges > 500 && removals > 10 && contexts > 50, "random sequences too trivial");
  return o;
}

/// Independent oracle: enumerate every simple outgoing path from `start` over
/// the raw association table, keep those with one type throughout that cannot
/// be extended (or hit the depth cap), and score them by hand.
std::vector<double> brute_force_strict(const Graph& g, ConceptId start, std::size_t max_depth, double beta) {
  std::vector<double> scores;
  std::vector<ConceptId> path{start};
  std::function<void(std::optional<STType>, double)> walk = [&](std::optional<STType> type, double product) {
    bool extended = false;
    if (path.size() - 1 < max_depth) {
      for (const auto& [id, a] : g.associations()) {
        const STType t = g.alias_of(a).type;
        if (a.from != path.back() || (type && t != *type)) continue;
        if (std::find(path.begin(), path.end(), a.to) != path.end()) continue;
        extended = true;
        path.push_back(a.to);
        walk(t, product * a.weight);
        path.pop_back();
      }
    }
    if (!extended && path.size() > 1) {
      double hops = 1.0;
      for (std::size_t i = 1; i < path.size(); ++i) hops *= beta;
      scores.push_back(product * hops);
    }
  };
  walk(std::nullopt, 1.0);
  std::sort(scores.rbegin(), scores.rend());
  return scores;
}

Outcome couch_chaining() {
  Outcome o;
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const std::vector<std::string> contains_aliases{"contains", "surrounds", "generalizes"};
  for (int trial = 0; trial < 200 && o.ok; ++trial) {
    Graph g;
    install_seed_aliases(g);
    const std::size_t len = 1 + rng() % 6;
    std::vector<double> ws;
    for (std::size_t i = 0; i < len; ++i) {
      ws.push_back(weight(rng));
      link(g, "n" + std::to_string(i), contains_aliases[rng() % contains_aliases.size()], "n" + std::to_string(i + 1),
           ws.back());
    }
    // Distractors of other types that strict mode must not splice in.
    if (trial % 2) {
      for (int d = 0; d < 3; ++d) {
        const std::size_t i = rng() % (len + 1);
        link(g, "n" + std::to_string(i), "depends on", "x" + std::to_string(d), weight(rng));
      }
    }
    const ConceptId head = g.require("n0");
    const auto stories = story_search(ActiveView(g, {}), head, {StoryMode::strict, 6, 1000});

    double expected = 1.0;
    for (double w : ws) expected *= w * g.params().beta;
    const auto oracle = brute_force_strict(g, head, 6, g.params().beta);
    o.require(std::find_if(oracle.begin(), oracle.end(), [&](double s) { return std::abs(s - expected) <= kTol; }) !=
                  oracle.end(),
              "oracle misses the chain");
    o.require(stories.size() == oracle.size(), "story count differs from oracle in trial " + std::to_string(trial));
    for (std::size_t i = 0; i < std::min(stories.size(), oracle.size()); ++i) {
      o.require(std::abs(stories[i].certainty - oracle[i]) <= kTol, "certainty differs in trial " + std::to_string(trial));
    }
    bool found = false;
    for (const Story& s : stories) {
      if (s.steps.size() == len && std::abs(s.certainty - expected) <= kTol) found = true;
    }
    o.require(found, "chain story missing in trial " + std::to_string(trial));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"decay law", decay_law},
      {"golden files", golden_files},
      {"type algebra", type_algebra},
      {"jane story", jane},
      {"non-propagation", non_propagation},
      {"context switching", context_switching},
      {"entropy identities", entropy_identities},
      {"co-activation combinatorics", co_activation},
      {"persistence round-trip", persistence},
      {"couch chaining", couch_chaining},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::printf("%s %zu %s%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.ok ? "" : ": ",
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

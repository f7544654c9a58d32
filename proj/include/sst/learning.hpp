#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "sst/types.hpp"

namespace sst {

class Graph;
struct NeighborFilter;

/// Rates for the learning kernel.
///
/// `ell` is the retention factor of the moving-average update and of the
/// decay law; `beta` is the per-hop certainty attenuation used when chaining
/// associations into stories. Both must lie strictly inside (0, 1).
struct LearningParams {
  double ell = 0.5;
  double beta = 0.75;
  double log_base = 2.0;

  bool operator==(const LearningParams&) const = default;
};

void validate(const LearningParams& params);

/// (1 - ell) * sample + ell * prev.
double learn_update(double prev, double sample, double ell);

/// ell^age: the attenuation of knowledge left unrefreshed for `age` ticks.
double decay_factor(Tick age, double ell);

/// Lazily decays the stored weight by the time elapsed since the edge was
/// last touched, then moves it toward 1.0. Returns the new weight.
double reinforce(Graph& graph, AssocId id, const LearningParams& params, Tick now);

/// One synchronous smoothing pass: every edge moves toward the mean weight
/// of the edges sharing an endpoint with it. Returns how many weights changed.
std::size_t anneal(Graph& graph, double lambda);

/// -sum p log_base(p), with 0 log 0 = 0.
double shannon_entropy(std::span<const double> distribution, double base = 2.0);

/// log2(n) - H2(d): how far a representation sits below maximum entropy.
double significance(std::span<const double> distribution, std::size_t alphabet_size);

std::size_t hamming(std::string_view a, std::string_view b);

/// Shortest hop count over the undirected adjacency, std::nullopt when
/// unreachable.
std::optional<std::size_t> hop_distance(const Graph& graph, ConceptId a, ConceptId b,
                                        const NeighborFilter* filter = nullptr);

/// True iff sampling every `sample_interval` ticks resolves changes that
/// happen every `change_interval` ticks.
bool nyquist_ok(Tick sample_interval, Tick change_interval);

}  // namespace sst

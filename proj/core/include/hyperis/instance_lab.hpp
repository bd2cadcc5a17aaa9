#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperis/hypergraph.hpp"

namespace hyperis {

inline constexpr std::uint32_t kDefaultRestarts = 2000;

// Random linear r-regular k-partite k-graph with every class of size n,
// optionally with no loose cycle of length < min_girth. Edges are assembled
// one at a time from vertices with spare degree; a stuck build restarts.
// Deterministic per seed. Throws InputError for infeasible parameters and
// GenerationFailure once `restarts` builds have failed.
Hypergraph gen_linear_regular(std::uint32_t k, std::uint32_t n, std::uint32_t r, std::uint64_t seed,
                              std::optional<std::uint32_t> min_girth = std::nullopt,
                              std::uint32_t restarts = kDefaultRestarts);

// `edges` distinct edges drawn uniformly from all k-partite k-sets (capped at
// the number available).
Hypergraph gen_random_kpartite(std::uint32_t k, const std::vector<std::uint32_t>& class_sizes, std::size_t edges,
                               std::uint64_t seed);

// `edges` distinct random `uniformity`-sets on num_vertices vertices.
SetSystem gen_random_set_system(std::uint32_t num_vertices, std::uint32_t uniformity, std::size_t edges,
                                std::uint64_t seed);

// A loose 4-cycle whose opposite joints share two neighbours, plus `extra`
// random edges over `padding` additional vertices per class. k >= 3.
Hypergraph gen_loose_four_cycle(std::uint32_t k, std::uint32_t padding, std::size_t extra, std::uint64_t seed);

enum class Verdict { kHolds, kViolated, kUnknown };

std::string to_string(Verdict v);

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::kUnknown;
  // Set whenever the verdict is kViolated.
  std::vector<Vertex> witness;
  // Smallest |N(S)| / (r |S|) seen, for the expansion checks.
  std::optional<double> worst_ratio;
  std::map<std::string, std::string> parameters;
  std::string detail;
};

inline constexpr std::uint32_t kDefaultExpansionSizeCap = 3;
inline constexpr std::uint32_t kDefaultExpansionSamples = 10'000;

// r >= (1/t) log_{gamma_k} n, decided exactly as
// 2^{(k-1)rt} >= n (2^{k-1}-1)^{rt}. Needs a regular graph with equal classes.
PropertyReport check_reg(const Hypergraph& g, std::uint32_t t);

// |N(S)| >= (k-1-alpha) r |S| for S inside a class with |S| <= r. Sizes up to
// size_cap are exhaustive; larger sizes are sampled and can only yield
// kViolated or kUnknown.
PropertyReport check_exp1(const Hypergraph& g, double alpha, std::uint32_t size_cap = kDefaultExpansionSizeCap,
                          std::uint32_t samples = kDefaultExpansionSamples, std::uint64_t seed = 1);

// |N(S)| >= (k-2+beta) r |S| for |S| <= beta n / r.
PropertyReport check_exp2(const Hypergraph& g, double beta, std::uint32_t size_cap = kDefaultExpansionSizeCap,
                          std::uint32_t samples = kDefaultExpansionSamples, std::uint64_t seed = 1);

// Every independent set meets some class in at most b vertices. Exhaustive
// when |V| <= budget, otherwise a randomized search for a violation.
PropertyReport check_def(const Hypergraph& g, std::uint32_t b, std::uint32_t budget, std::uint64_t seed = 1);

PropertyReport check_linear(const Hypergraph& g);

// No loose cycle of length 3..min_girth-1.
PropertyReport check_girth(const Hypergraph& g, std::uint32_t min_girth,
                           std::uint64_t node_cap = kDefaultCycleNodeCap);

// Every Z2 edge vu has |N({v}) ∩ N({u})| == 1.
PropertyReport check_common_neighbor(const Hypergraph& g);

// r <= sqrt(2n), checked when an exhaustive Exp1(alpha < 1) report holds,
// k >= 3 and n >= 3. Otherwise kUnknown.
PropertyReport check_degree_bound(const Hypergraph& g, const PropertyReport& exp1, double alpha);

}  // namespace hyperis

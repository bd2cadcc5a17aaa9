#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/rational.hpp"
#include "hyperis/real.hpp"

namespace hyperis {

// A 2-linked subset of one class together with its neighbourhood.
struct Polymer {
  std::uint32_t cls = 0;
  VertexSet vertices;
  VertexSet neighborhood;

  std::size_t order() const { return vertices.size(); }

  bool operator==(const Polymer& o) const { return cls == o.cls && vertices == o.vertices; }
  auto operator<=>(const Polymer& o) const {
    if (auto c = cls <=> o.cls; c != 0) return c;
    return vertices <=> o.vertices;
  }
};

// Validates 2-linkedness and caches N(S). Throws InputError otherwise.
Polymer make_polymer(const Hypergraph& g, VertexSet vertices);

// Calls `visit` once per 2-linked S in the graph's class with 1 <= |S| <= b
// (containing `root` when given). Order is deterministic but not sorted.
void for_each_polymer(const Hypergraph& g, const Z2Graph& z2, std::uint32_t b,
                      std::optional<Vertex> root, const std::function<void(const VertexSet&)>& visit);

// All polymers of P_{Z,b}, sorted lexicographically by vertex list.
std::vector<Polymer> enumerate_polymers(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                                        std::optional<Vertex> root = std::nullopt);

// w(S) = |I(L(S))| * 2^{-|N(S)|}.
ExactRational polymer_weight(const Hypergraph& g, const Polymer& s);

// Disjoint neighbourhoods. A polymer is never compatible with itself.
bool compatible(const Polymer& s, const Polymer& t);

inline constexpr std::size_t kDefaultPolymerCap = 256;
// HYPERIS_POLYMER_CAP overrides the default.
std::size_t default_polymer_cap();

// An explicit finite polymer model: weights, orders and a reflexive
// incompatibility relation. Hypergraph models convert into this; synthetic
// models can be written down directly.
struct PolymerSystem {
  std::vector<ExactRational> weights;
  std::vector<std::uint32_t> orders;
  std::vector<std::vector<bool>> incompatible;

  std::size_t size() const { return weights.size(); }
  // Appends a polymer; `clashes` lists earlier polymers it is incompatible with.
  std::size_t add(ExactRational weight, std::uint32_t order, const std::vector<std::size_t>& clashes = {});

  static PolymerSystem from_polymers(const Hypergraph& g, const std::vector<Polymer>& polymers);
};

// Weighted sum over compatible families; the empty family contributes 1.
// Refuses models with more than `cap` polymers.
ExactRational partition_function(const PolymerSystem& model, std::size_t cap = default_polymer_cap());

// Xi_{Z,b} of the hypergraph model. b = 0 gives the empty model.
ExactRational partition_function(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                                 std::size_t cap = default_polymer_cap());

struct KpTerm {
  Polymer polymer;
  ExactRational weight;
  Real f;     // (k-1)|S|/r, rounded up
  Real g;     // log(gamma_k) * r * log(2|S|), rounded up
  Real term;  // w(S) exp(f + g), rounded up
};

struct KpTerms {
  Vertex root = 0;
  std::uint32_t b = 0;
  std::uint32_t r = 0;
  Real lhs;           // upper bound on the sum over polymers containing root
  ExactRational rhs;  // 1 / r^3
  bool holds = true;  // lhs <= rhs, decided on the rounded-up lhs
  std::vector<KpTerm> terms;
};

// Sum over S ∋ u of w(S) exp(f(S) + g(S)) against 1/r^3. Reported, never
// asserted: small instances may fail. Throws InputError if g is not regular.
KpTerms kp_sum(const Hypergraph& g, std::uint32_t cls, Vertex u, std::uint32_t b,
               std::size_t cap = default_polymer_cap());

struct KpConditionReport {
  bool holds = true;
  std::size_t polymers = 0;
  // Polymer with the largest lhs / f(S) ratio.
  std::optional<Polymer> worst;
  Real worst_lhs;
  Real worst_f;
};

// For every S: sum over T incompatible with S of w(T) exp(f(T) + g(T)) <= f(S),
// with lhs rounded up and f(S) rounded down.
KpConditionReport kp_condition(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                               std::size_t cap = default_polymer_cap());

// Maximum number of pairwise disjoint edges (branch and bound).
std::uint32_t max_matching_size(const SetSystem& h);
std::uint32_t max_matching_size(const LinkGraph& l);

// gamma_k^{-m}.
ExactRational matching_weight_bound(std::uint32_t k, std::uint32_t m);

// Instance form of the expansion-to-matching bound: applicable when
// |N(S)| >= (k-2+beta) r |S|, in which case m(S) >= beta r |S| / (k-1).
struct ExpansionMatchingCheck {
  bool applicable = false;
  bool holds = true;
  std::uint32_t matching = 0;
  std::size_t neighborhood = 0;
};
ExpansionMatchingCheck expansion_matching_check(const Hypergraph& g, const Polymer& s, double beta,
                                                std::uint32_t r);

// count <= e((k-1) e r^2)^{s-1}, using a rounded-down bound.
bool two_linked_count_within_bound(std::uint32_t k, std::uint32_t r, std::uint32_t s, const BigCount& count);

// m_{Z,b}(s): minimum matching number of L(S) over polymers of each order s.
std::map<std::uint32_t, std::uint32_t> min_matching_by_order(const Hypergraph& g, std::uint32_t cls,
                                                            std::uint32_t b);

}  // namespace hyperis

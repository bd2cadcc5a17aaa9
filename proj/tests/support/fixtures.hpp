#pragma once

#include <vector>

#include "hyperis/hypergraph.hpp"

namespace fixture {

using hyperis::Hypergraph;
using hyperis::VertexId;

// {a,b,c} with a = 0:0, b = 1:0, c = 2:0.
inline Hypergraph single_edge() { return Hypergraph(3, {1, 1, 1}, {{{0, 0}, {1, 0}, {2, 0}}}); }

// {a,b,c}, {a,d,e} with a = 0:0, b = 1:0, c = 2:0, d = 1:1, e = 2:1.
inline Hypergraph fan() {
  return Hypergraph(3, {1, 2, 2}, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 1}, {2, 1}}});
}

// {a,b,c}, {a,b,d}: two shared vertices.
inline Hypergraph nonlinear_pair() {
  return Hypergraph(3, {1, 1, 2}, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {2, 1}}});
}

// Loose triangle: joints 0:0, 1:0, 2:1 and interiors 2:0, 0:1, 1:1.
inline Hypergraph loose_triangle() {
  return Hypergraph(3, {2, 2, 2},
                    {{{0, 0}, {1, 0}, {2, 0}}, {{1, 0}, {2, 1}, {0, 1}}, {{2, 1}, {0, 0}, {1, 1}}});
}

// Every k-partite edge on classes of size 2.
inline Hypergraph complete_222() {
  std::vector<std::vector<VertexId>> edges;
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      for (unsigned c = 0; c < 2; ++c) edges.push_back({{0, a}, {1, b}, {2, c}});
    }
  }
  return Hypergraph(3, {2, 2, 2}, edges);
}

inline Hypergraph edgeless(unsigned k, unsigned n) { return Hypergraph(k, std::vector<unsigned>(k, n), {}); }

}  // namespace fixture

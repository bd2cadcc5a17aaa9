#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "hyperis/errors.hpp"
#include "hyperis/instance_lab.hpp"
#include "hyperis/hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperis;

TEST_CASE("construction validates partiteness, range and duplicates") {
  CHECK_THROWS_AS(Hypergraph(3, {1, 1, 1}, {{{0, 0}, {1, 0}}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, {1, 1, 1}, {{{0, 0}, {0, 0}, {2, 0}}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, {1, 1, 1}, {{{0, 0}, {1, 1}, {2, 0}}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, {1, 1, 1}, {{{0, 0}, {1, 0}, {2, 0}}, {{2, 0}, {1, 0}, {0, 0}}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, {1, 0, 1}, {}), InputError);
}

TEST_CASE("incidence matches a rebuild from the edge list") {
  const auto g = gen_random_kpartite(3, {3, 4, 2}, 10, 5);
  std::vector<std::vector<std::uint32_t>> rebuilt(g.num_vertices());
  for (std::uint32_t i = 0; i < g.num_edges(); ++i) {
    for (Vertex v : g.edge(i)) rebuilt[v].push_back(i);
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(g.incident(v) == rebuilt[v]);
  for (const auto& e : g.edges()) {
    std::set<std::uint32_t> classes;
    for (Vertex v : e) classes.insert(g.class_of(v));
    CHECK(classes.size() == 3);
  }
}

TEST_CASE("neighborhood") {
  const auto g = fixture::single_edge();
  CHECK(neighborhood(g, VertexSet{0}) == VertexSet{1, 2});
  CHECK(neighborhood(g, VertexSet{0, 1, 2}).empty());
  const auto f = fixture::fan();
  // a=0, b=1, d=2, c=3, e=4
  CHECK(neighborhood(f, VertexSet{0}) == VertexSet{1, 2, 3, 4});
  CHECK_THROWS_AS(neighborhood(g, VertexSet{7}), InputError);
}

TEST_CASE("link graph") {
  const auto g = fixture::single_edge();
  const auto l = link_graph(g, VertexSet{0});
  CHECK(l.uniformity == 2);
  CHECK(l.vertices == VertexSet{1, 2});
  CHECK(l.edges == std::vector<Edge>{{1, 2}});
  CHECK_THROWS_AS(link_graph(g, VertexSet{0, 1}), InputError);
  CHECK_THROWS_AS(link_graph(g, VertexSet{}), InputError);

  SUBCASE("singleton in a linear regular graph is a perfect matching") {
    const auto h = gen_linear_regular(4, 5, 2, 3);
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      const auto lv = link_graph(h, VertexSet{v});
      CHECK(lv.edges.size() == 2);
      CHECK(lv.vertices.size() == 6);
    }
  }

  SUBCASE("pair with one common neighbour in a girth-5 graph") {
    const auto h = gen_linear_regular(3, 6, 2, 11, 5);
    const Z2Graph z2(h, 0);
    const Vertex v = 0;
    REQUIRE(!z2.neighbors(v).empty());
    const Vertex u = z2.neighbors(v).front();
    const auto l = link_graph(h, VertexSet{v, u});
    CHECK(l.vertices.size() == 7);
    CHECK(l.edges.size() == 4);
    std::map<Vertex, int> deg;
    for (const auto& e : l.edges) {
      for (Vertex x : e) ++deg[x];
    }
    int shared = 0;
    for (const auto& [x, d] : deg) shared += d == 2;
    CHECK(shared == 1);
  }
}

TEST_CASE("link graph vertex set equals the neighbourhood") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = gen_random_kpartite(3, {3, 3, 3}, 8, seed);
    for (Vertex v = 0; v < 3; ++v) {
      for (Vertex u = v; u < 3; ++u) {
        const VertexSet s = v == u ? VertexSet{v} : VertexSet{v, u};
        const auto l = link_graph(g, s);
        CHECK(l.vertices == neighborhood(g, s));
        std::set<Vertex> covered;
        for (const auto& e : l.edges) {
          CHECK(e.size() == 2);
          covered.insert(e.begin(), e.end());
        }
        CHECK(VertexSet(covered.begin(), covered.end()) == l.vertices);
        for (Vertex x : l.vertices) CHECK(g.class_of(x) != 0);
      }
    }
  }
}

TEST_CASE("neighbourhood size bound") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = gen_random_kpartite(3, {4, 3, 3}, 9, seed);
    for (std::uint64_t mask = 1; mask < 16; ++mask) {
      VertexSet s;
      std::size_t degrees = 0;
      for (Vertex v = 0; v < 4; ++v) {
        if ((mask >> v) & 1) {
          s.push_back(v);
          degrees += g.degree(v);
        }
      }
      CHECK(neighborhood(g, s).size() <= 2 * degrees);
    }
  }
}

TEST_CASE("z2 neighbours") {
  CHECK(z2_neighbors(fixture::single_edge(), 0).empty());
  // {a,b,c}, {a',b,c'}: a and a' share b.
  const Hypergraph g(3, {2, 1, 2}, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 0}, {2, 1}}});
  CHECK(z2_neighbors(g, 0) == VertexSet{1});
  const Z2Graph z2(g, 0);
  CHECK(z2.adjacent(0, 1));
  CHECK(z2.neighbors(1) == VertexSet{0});

  SUBCASE("girth-5 linear graphs have (k-1) r (r-1) z2 neighbours") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto h = gen_linear_regular(3, 8, 2, seed, 5);
      for (Vertex v = 0; v < h.num_vertices(); ++v) {
        CHECK(z2_neighbors(h, v).size() == 4);
        // cross-check against the oracle's pairwise scan
        std::size_t brute = 0;
        for (Vertex u : h.class_vertices(h.class_of(v))) brute += u != v && oracle::shares_neighbor(h, u, v);
        CHECK(brute == 4);
      }
    }
  }
}

TEST_CASE("two-linked components") {
  const Hypergraph g(3, {3, 1, 3}, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 0}, {2, 1}}, {{0, 2}, {1, 0}, {2, 2}}});
  CHECK(two_linked_components(g, VertexSet{}).empty());
  CHECK(two_linked_components(g, VertexSet{0}) == std::vector<VertexSet>{{0}});
  CHECK(two_linked_components(g, VertexSet{0, 2}) == std::vector<VertexSet>{{0, 2}});
  const auto h = fixture::edgeless(3, 2);
  CHECK(two_linked_components(h, VertexSet{0, 1}) == std::vector<VertexSet>{{0}, {1}});

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = gen_random_kpartite(3, {5, 3, 3}, 6, seed);
    const VertexSet t{0, 1, 2, 3, 4};
    const auto comps = two_linked_components(r, t);
    VertexSet all;
    for (const auto& c : comps) {
      CHECK(is_two_linked(r, c));
      all.insert(all.end(), c.begin(), c.end());
    }
    std::sort(all.begin(), all.end());
    CHECK(all == t);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        for (Vertex a : comps[i]) {
          for (Vertex b : comps[j]) CHECK_FALSE(oracle::shares_neighbor(r, a, b));
        }
      }
    }
  }
}

TEST_CASE("linearity and regularity") {
  CHECK(is_linear(fixture::single_edge()));
  CHECK_FALSE(is_linear(fixture::nonlinear_pair()));
  CHECK(regular_degree(fixture::single_edge()) == 1u);
  CHECK_FALSE(regular_degree(fixture::fan()).has_value());
  const auto g = gen_linear_regular(3, 5, 2, 9);
  CHECK(is_linear(g));
  CHECK(regular_degree(g) == 2u);
}

TEST_CASE("loose cycles") {
  const auto tri = fixture::loose_triangle();
  const auto found = girth_at_most(tri, 3);
  REQUIRE(found.found());
  CHECK(found.length == 3);
  CHECK(found.witness.size() == 6);
  CHECK(is_loose_cycle(tri, found.witness));

  const auto single = fixture::single_edge();
  for (std::uint32_t l = 3; l <= 6; ++l) CHECK(girth_at_most(single, l).status == CycleSearchStatus::kNotFound);
  CHECK_THROWS_AS(girth_at_most(single, 2), InputError);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK_FALSE(girth_at_most(gen_linear_regular(3, 7, 2, seed, 5), 4).found());
  }

  SUBCASE("node cap reports indeterminate") {
    const auto g = gen_linear_regular(3, 12, 3, 2);
    const auto r = girth_at_most(g, 8, 5);
    CHECK(r.status != CycleSearchStatus::kNotFound);
  }
}

TEST_CASE("two common neighbours in a linear graph force a short loose cycle") {
  int seen = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const auto g = gen_random_kpartite(3, {4, 4, 4}, 6, seed);
    if (!is_linear(g)) continue;
    bool double_pair = false;
    for (Vertex v = 0; v < g.num_vertices() && !double_pair; ++v) {
      const auto nv = neighborhood(g, VertexSet{v});
      for (Vertex u : z2_neighbors(g, v)) {
        const auto nu = neighborhood(g, VertexSet{u});
        VertexSet common;
        std::set_intersection(nv.begin(), nv.end(), nu.begin(), nu.end(), std::back_inserter(common));
        if (common.size() >= 2) double_pair = true;
      }
    }
    if (!double_pair) continue;
    ++seen;
    CHECK(girth_at_most(g, 4).found());
  }
  CHECK(seen > 0);
}

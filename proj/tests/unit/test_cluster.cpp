#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hyperis/closed_forms.hpp"
#include "hyperis/cluster.hpp"
#include "hyperis/errors.hpp"
#include "hyperis/exact_counting.hpp"
#include "hyperis/instance_lab.hpp"
#include "oracles.hpp"

using namespace hyperis;

namespace {

SmallGraph star(std::uint32_t m) {
  SmallGraph g(m);
  for (std::uint32_t i = 1; i < m; ++i) g.add_edge(0, i);
  return g;
}

ExactRational mercator(const ExactRational& w, std::uint32_t t) {
  ExactRational sum = 0;
  for (std::uint32_t m = 1; m <= t; ++m) {
    ExactRational term = qpow(w, m) / m;
    sum += m % 2 ? term : -term;
  }
  sum.canonicalize();
  return sum;
}

}  // namespace

TEST_CASE("ursell values") {
  CHECK(ursell(SmallGraph(1)) == 1);
  CHECK(ursell(SmallGraph::complete(2)) == ExactRational(-1, 2));
  CHECK(ursell(SmallGraph::complete(3)) == ExactRational(1, 3));
  for (std::uint32_t m = 1; m <= 6; ++m) {
    const ExactRational sign = m % 2 ? 1 : -1;
    CHECK(ursell(SmallGraph::complete(m)) == sign / m);
    CHECK(ursell(SmallGraph::path(m)) == sign / oracle::factorial(m));
    CHECK(ursell(star(m)) == sign / oracle::factorial(m));
  }
  CHECK_THROWS_AS(ursell(SmallGraph(2)), InputError);
  CHECK_THROWS_AS(ursell(SmallGraph::complete(10)), BudgetExceeded);
  CHECK(ursell(SmallGraph::complete(10), 10) == ExactRational(-1, 10));
}

TEST_CASE("ursell agrees with edge-subset enumeration") {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    const std::uint32_t pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      SmallGraph g(n);
      std::uint32_t bit = 0;
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b, ++bit) {
          if ((mask >> bit) & 1) g.add_edge(a, b);
        }
      }
      if (!g.connected()) continue;
      CHECK(ursell(g) == oracle::ursell(g));
    }
  }
}

TEST_CASE("single edge clusters") {
  const auto g = fixture::single_edge();
  const auto c1 = enumerate_clusters(g, 0, 1);
  REQUIRE(c1.size() == 1);
  CHECK(cluster_weight(c1[0]) == ExactRational(3, 4));
  CHECK(truncated_log_xi(g, 0, 1) == ExactRational(3, 4));
  CHECK(truncated_log_xi(g, 0, 2) == ExactRational(15, 32));
  CHECK(truncated_log_xi(g, 0, 3) == ExactRational(15, 32) + ExactRational(9, 64));
  const auto c2 = enumerate_clusters(g, 0, 2);
  REQUIRE(c2.size() == 2);
  CHECK(c2[1].entries[0].multiplicity == 2);
  CHECK(cluster_weight(c2[1]) == ExactRational(-1, 2) * ExactRational(9, 16));
  CHECK(c2[1].ordering_count() == 1);
}

TEST_CASE("t = 1 clusters are the singletons") {
  const auto g = gen_linear_regular(3, 6, 2, 1);
  const auto cs = enumerate_clusters(g, 2, 1);
  CHECK(cs.size() == 6);
  for (const auto& c : cs) {
    CHECK(c.length() == 1);
    CHECK(cluster_weight(c) == qpow(gamma_k(3), -2));
  }
  CHECK(enumerate_clusters(g, 2, 0).empty());
}

TEST_CASE("cluster invariants") {
  const auto g = gen_linear_regular(3, 6, 2, 3, 5);
  const Z2Graph z2(g, 0);
  for (const auto& c : enumerate_clusters(g, 0, 3)) {
    CHECK(c.size() >= c.length());
    CHECK(c.length() >= 1);
    CHECK(c.size() <= 3);
    CHECK(incompatibility_graph(c).connected());
    const auto support = c.support();
    CHECK(support.size() <= c.size());
    CHECK(is_two_linked(g, support));
    // every support vertex lies within t-1 Z2 hops of the least one
    std::map<Vertex, int> dist{{support.front(), 0}};
    std::vector<Vertex> queue{support.front()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Vertex u : z2.neighbors(queue[i])) {
        if (!dist.count(u)) {
          dist[u] = dist[queue[i]] + 1;
          queue.push_back(u);
        }
      }
    }
    for (Vertex v : support) CHECK(dist.at(v) <= 2);
  }
}

TEST_CASE("truncated sum matches the ordered-tuple oracle") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto g = gen_random_kpartite(3, {3, 3, 3}, 3 + seed % 7, seed);
    for (std::uint32_t t = 1; t <= 3; ++t) {
      CHECK(truncated_log_xi(g, 0, t) == oracle::ordered_log_xi(g, 0, t));
    }
  }
  const auto h = gen_linear_regular(3, 6, 2, 9, 5);
  CHECK(truncated_log_xi(h, 1, 2) == oracle::ordered_log_xi(h, 1, 2));
}

TEST_CASE("thread count does not change the result") {
  const auto g = gen_linear_regular(3, 7, 2, 5);
  const auto one = enumerate_clusters(g, 0, 3, 1);
  const auto four = enumerate_clusters(g, 0, 3, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].entries.size() == four[i].entries.size());
    for (std::size_t j = 0; j < one[i].entries.size(); ++j) {
      CHECK(one[i].entries[j].polymer == four[i].entries[j].polymer);
      CHECK(one[i].entries[j].multiplicity == four[i].entries[j].multiplicity);
    }
  }
  CHECK(truncated_log_xi(g, 0, 3, 1) == truncated_log_xi(g, 0, 3, 3));
}

TEST_CASE("single-polymer model follows the log(1+w) series") {
  for (const ExactRational w : {ExactRational(1, 2), ExactRational(3, 4), ExactRational(1, 5)}) {
    PolymerSystem model;
    model.add(w, 1);
    for (std::uint32_t t = 1; t <= 7; ++t) CHECK(truncated_log_xi(model, t) == mercator(w, t));
  }
}

TEST_CASE("model clusters") {
  PolymerSystem model;
  model.add(ExactRational(1, 4), 1);
  model.add(ExactRational(1, 8), 1, {0});
  model.add(ExactRational(1, 16), 2);
  const auto cs = enumerate_clusters(model, 2);
  // {0},{1},{2},{0,0},{1,1},{0,1}
  CHECK(cs.size() == 6);
  ModelCluster mixed{{{0, 1}, {1, 1}}};
  CHECK(mixed.ordering_count() == 2);
  CHECK(cluster_weight(model, mixed) == ExactRational(-1, 2) * ExactRational(1, 32));
  // compatible pair is not a cluster
  ModelCluster apart{{{0, 1}, {2, 1}}};
  CHECK_FALSE(incompatibility_graph(model, apart).connected());
}

TEST_CASE("truncated sums approach log Xi on tiny instances") {
  const auto g = fixture::single_edge();
  const double target = std::log(1.75);
  double previous = 1e9;
  for (std::uint32_t t = 1; t <= 6; ++t) {
    const double gap = std::abs(truncated_log_xi(g, 0, t).get_d() - target);
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("estimate") {
  const auto g = fixture::single_edge();
  const auto est = estimate_count(g, 1);
  CHECK(static_cast<double>(est.value.log_value) == doctest::Approx(std::log(12.0) + 0.75).epsilon(1e-14));
  for (const auto& x : est.exponents) CHECK(x == ExactRational(3, 4));

  for (std::uint32_t k = 3; k <= 4; ++k) {
    const auto h = gen_linear_regular(k, 5, 2, 2);
    const auto e = estimate_count(h, 1);
    const ExactRational x = 5 * qpow(gamma_k(k), -2);
    for (const auto& z : e.exponents) CHECK(z == x);
    const double expect = std::log(static_cast<double>(k)) + (k - 1) * 5 * std::log(2.0) + x.get_d();
    CHECK(static_cast<double>(e.value.log_value) == doctest::Approx(expect).epsilon(1e-14));
  }

  CHECK_THROWS_AS(estimate_count(g, 0), InputError);
  CHECK_THROWS_AS(estimate_count(fixture::fan(), 1), InputError);
  CHECK_THROWS_AS(estimate_count(Hypergraph(2, {1, 1}, {{{0, 0}, {1, 0}}}), 1), InputError);
  CHECK_THROWS_AS(estimate_count(Hypergraph(3, {1, 1, 2}, {}), 1), InputError);
  // edgeless classes: every vertex isolated, clusters are repeated singletons of weight 1
  const auto e = estimate_count(fixture::edgeless(3, 1), 1);
  CHECK(e.exponents[0] == 1);
}

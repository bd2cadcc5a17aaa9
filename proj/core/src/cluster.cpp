#include "hyperis/cluster.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "hyperis/closed_forms.hpp"
#include "hyperis/errors.hpp"

namespace hyperis {

namespace {

BigCount factorial(std::uint32_t m) {
  BigCount f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

std::uint32_t Cluster::length() const {
  std::uint32_t total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

std::uint32_t Cluster::size() const {
  std::uint32_t total = 0;
  for (const auto& e : entries) total += e.multiplicity * static_cast<std::uint32_t>(e.polymer.order());
  return total;
}

BigCount Cluster::ordering_count() const {
  BigCount count = factorial(length());
  for (const auto& e : entries) count /= factorial(e.multiplicity);
  return count;
}

VertexSet Cluster::support() const {
  VertexSet out;
  for (const auto& e : entries) out.insert(out.end(), e.polymer.vertices.begin(), e.polymer.vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SmallGraph incompatibility_graph(const Cluster& c) {
  std::vector<const Polymer*> expanded;
  for (const auto& e : c.entries) {
    for (std::uint32_t i = 0; i < e.multiplicity; ++i) expanded.push_back(&e.polymer);
  }
  SmallGraph h(static_cast<std::uint32_t>(expanded.size()));
  for (std::uint32_t a = 0; a < expanded.size(); ++a) {
    for (std::uint32_t b = a + 1; b < expanded.size(); ++b) {
      if (!compatible(*expanded[a], *expanded[b])) h.add_edge(a, b);
    }
  }
  return h;
}

ExactRational cluster_weight(const Cluster& c) {
  ExactRational w = ursell(incompatibility_graph(c));
  for (const auto& e : c.entries) w *= qpow(e.weight, e.multiplicity);
  w.canonicalize();
  return w;
}

namespace {

// Clusters whose support is exactly U: multisets of 2-linked subsets of U
// covering U with total order <= t and a connected incompatibility graph.
class SupportClusters {
 public:
  SupportClusters(const Hypergraph& g, const Z2Graph& z2, std::uint32_t t,
                  std::map<VertexSet, ExactRational>& weight_cache)
      : g_(g), z2_(z2), t_(t), weight_cache_(weight_cache) {}

  void run(const VertexSet& support, std::vector<Cluster>& out) {
    support_ = support;
    const std::uint32_t m = static_cast<std::uint32_t>(support.size());
    subs_.clear();
    masks_.clear();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      VertexSet s;
      for (std::uint32_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1u) s.push_back(support[i]);
      }
      if (!linked(s)) continue;
      subs_.push_back(polymer(s));
      masks_.push_back(mask);
    }
    std::vector<std::size_t> order(subs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return subs_[a].polymer < subs_[b].polymer;
    });
    std::vector<ClusterEntry> sorted_subs;
    std::vector<std::uint32_t> sorted_masks;
    for (auto i : order) {
      sorted_subs.push_back(subs_[i]);
      sorted_masks.push_back(masks_[i]);
    }
    subs_ = std::move(sorted_subs);
    masks_ = std::move(sorted_masks);
    full_ = (1u << m) - 1;
    chosen_.clear();
    choose(0, t_, 0, out);
  }

 private:
  bool linked(const VertexSet& s) const {
    std::uint32_t seen = 1;
    std::uint32_t frontier = 1;
    while (frontier) {
      const int i = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (std::uint32_t j = 0; j < s.size(); ++j) {
        if (!((seen >> j) & 1u) && z2_.adjacent(s[i], s[j])) {
          seen |= 1u << j;
          frontier |= 1u << j;
        }
      }
    }
    return std::popcount(seen) == static_cast<int>(s.size());
  }

  ClusterEntry polymer(const VertexSet& s) {
    ClusterEntry entry;
    entry.polymer.cls = z2_.cls();
    entry.polymer.vertices = s;
    entry.polymer.neighborhood = neighborhood(g_, s);
    auto it = weight_cache_.find(s);
    if (it == weight_cache_.end()) it = weight_cache_.emplace(s, polymer_weight(g_, entry.polymer)).first;
    entry.weight = it->second;
    return entry;
  }

  void choose(std::size_t i, std::uint32_t budget, std::uint32_t covered, std::vector<Cluster>& out) {
    if (i == subs_.size()) {
      if (covered != full_ || chosen_.empty()) return;
      Cluster c;
      c.entries = chosen_;
      if (incompatibility_graph(c).connected()) out.push_back(std::move(c));
      return;
    }
    choose(i + 1, budget, covered, out);
    const auto order = static_cast<std::uint32_t>(subs_[i].polymer.order());
    for (std::uint32_t mult = 1; mult * order <= budget; ++mult) {
      ClusterEntry e = subs_[i];
      e.multiplicity = mult;
      chosen_.push_back(std::move(e));
      choose(i + 1, budget - mult * order, covered | masks_[i], out);
      chosen_.pop_back();
    }
  }

  const Hypergraph& g_;
  const Z2Graph& z2_;
  std::uint32_t t_;
  std::map<VertexSet, ExactRational>& weight_cache_;
  VertexSet support_;
  std::vector<ClusterEntry> subs_;
  std::vector<std::uint32_t> masks_;
  std::uint32_t full_ = 0;
  std::vector<ClusterEntry> chosen_;
};

std::vector<Cluster> clusters_for_root(const Hypergraph& g, const Z2Graph& z2, std::uint32_t t, Vertex root,
                                       std::map<VertexSet, ExactRational>& cache) {
  std::vector<VertexSet> supports;
  for_each_polymer(g, z2, t, root, [&](const VertexSet& s) {
    if (s.front() == root) supports.push_back(s);
  });
  std::sort(supports.begin(), supports.end());
  std::vector<Cluster> out;
  SupportClusters builder(g, z2, t, cache);
  for (const auto& s : supports) builder.run(s, out);
  return out;
}

}  // namespace

std::vector<Cluster> enumerate_clusters(const Hypergraph& g, std::uint32_t cls, std::uint32_t t, unsigned threads) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range");
  if (t == 0) return {};
  if (t > 16) throw BudgetExceeded("cluster truncation t=" + std::to_string(t) + " exceeds 16");
  const Z2Graph z2(g, cls);
  const std::uint32_t roots = z2.size();
  std::vector<std::vector<Cluster>> per_root(roots);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, roots));
  auto work = [&](unsigned w) {
    std::map<VertexSet, ExactRational> cache;
    for (std::uint32_t i = w; i < roots; i += workers) {
      per_root[i] = clusters_for_root(g, z2, t, z2.offset() + i, cache);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<Cluster> out;
  for (auto& chunk : per_root) {
    for (auto& c : chunk) out.push_back(std::move(c));
  }
  return out;
}

ExactRational truncated_log_xi(const Hypergraph& g, std::uint32_t cls, std::uint32_t t, unsigned threads) {
  ExactRational sum = 0;
  for (const auto& c : enumerate_clusters(g, cls, t, threads)) {
    sum += ExactRational(c.ordering_count()) * cluster_weight(c);
  }
  sum.canonicalize();
  return sum;
}

std::uint32_t ModelCluster::length() const {
  std::uint32_t total = 0;
  for (const auto& [index, mult] : entries) total += mult;
  return total;
}

std::uint32_t ModelCluster::size(const PolymerSystem& model) const {
  std::uint32_t total = 0;
  for (const auto& [index, mult] : entries) total += mult * model.orders.at(index);
  return total;
}

BigCount ModelCluster::ordering_count() const {
  BigCount count = factorial(length());
  for (const auto& [index, mult] : entries) count /= factorial(mult);
  return count;
}

SmallGraph incompatibility_graph(const PolymerSystem& model, const ModelCluster& c) {
  std::vector<std::size_t> expanded;
  for (const auto& [index, mult] : c.entries) {
    if (index >= model.size()) throw InputError("cluster references a missing polymer");
    for (std::uint32_t i = 0; i < mult; ++i) expanded.push_back(index);
  }
  SmallGraph h(static_cast<std::uint32_t>(expanded.size()));
  for (std::uint32_t a = 0; a < expanded.size(); ++a) {
    for (std::uint32_t b = a + 1; b < expanded.size(); ++b) {
      if (model.incompatible[expanded[a]][expanded[b]]) h.add_edge(a, b);
    }
  }
  return h;
}

ExactRational cluster_weight(const PolymerSystem& model, const ModelCluster& c) {
  ExactRational w = ursell(incompatibility_graph(model, c));
  for (const auto& [index, mult] : c.entries) w *= qpow(model.weights[index], mult);
  w.canonicalize();
  return w;
}

namespace {

void model_clusters(const PolymerSystem& model, std::size_t i, std::uint32_t budget, ModelCluster& current,
                    std::vector<ModelCluster>& out) {
  if (i == model.size()) {
    if (!current.entries.empty() && incompatibility_graph(model, current).connected()) out.push_back(current);
    return;
  }
  model_clusters(model, i + 1, budget, current, out);
  const std::uint32_t order = std::max<std::uint32_t>(model.orders[i], 1);
  for (std::uint32_t mult = 1; mult * order <= budget; ++mult) {
    current.entries.emplace_back(i, mult);
    model_clusters(model, i + 1, budget - mult * order, current, out);
    current.entries.pop_back();
  }
}

}  // namespace

std::vector<ModelCluster> enumerate_clusters(const PolymerSystem& model, std::uint32_t t) {
  std::vector<ModelCluster> out;
  ModelCluster current;
  model_clusters(model, 0, t, current, out);
  return out;
}

ExactRational truncated_log_xi(const PolymerSystem& model, std::uint32_t t) {
  ExactRational sum = 0;
  for (const auto& c : enumerate_clusters(model, t)) {
    sum += ExactRational(c.ordering_count()) * cluster_weight(model, c);
  }
  sum.canonicalize();
  return sum;
}

CountEstimate estimate_count(const Hypergraph& g, std::uint32_t t, unsigned threads) {
  if (g.k() < 3) throw InputError("estimate needs k >= 3");
  if (t < 1) throw InputError("estimate needs t >= 1");
  if (!g.equal_class_sizes()) throw InputError("estimate needs equal class sizes");
  if (!regular_degree(g)) throw InputError("estimate needs a regular hypergraph");
  CountEstimate est;
  est.t = t;
  Real sum(0);
  for (std::uint32_t cls = 0; cls < g.k(); ++cls) {
    est.exponents.push_back(truncated_log_xi(g, cls, t, threads));
    sum = Real::add(sum, Real::exp(Real(est.exponents.back(), MPFR_RNDN), MPFR_RNDN), MPFR_RNDN);
  }
  const long bits = static_cast<long>(g.k() - 1) * static_cast<long>(g.class_size(0));
  Real log_value = Real::add(Real::mul(Real(bits), Real::log(Real(2), MPFR_RNDN), MPFR_RNDN),
                             Real::log(sum, MPFR_RNDN), MPFR_RNDN);
  est.value = LogNumber{log_value.to_long_double()};
  return est;
}

}  // namespace hyperis

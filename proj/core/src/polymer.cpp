#include "hyperis/polymer.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "hyperis/closed_forms.hpp"
#include "hyperis/errors.hpp"
#include "hyperis/exact_counting.hpp"

namespace hyperis {

std::size_t default_polymer_cap() {
  if (const char* env = std::getenv("HYPERIS_POLYMER_CAP")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultPolymerCap;
}

Polymer make_polymer(const Hypergraph& g, VertexSet vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!is_two_linked(g, vertices)) throw InputError("polymer vertex set is not 2-linked");
  Polymer p;
  p.cls = g.class_of(vertices.front());
  p.neighborhood = neighborhood(g, vertices);
  p.vertices = std::move(vertices);
  return p;
}

namespace {

// ESU-style growth of connected sets: each connected set containing `root`
// (and otherwise only vertices above `floor`, when restricted) is produced
// exactly once by only extending through exclusive neighbours.
class ConnectedSetGrower {
 public:
  ConnectedSetGrower(const Z2Graph& z2, std::uint32_t max_size,
                     const std::function<void(const VertexSet&)>& visit)
      : z2_(z2), max_size_(max_size), visit_(visit), marks_(z2.size(), 0) {}

  void grow_from(Vertex root, std::optional<Vertex> floor) {
    floor_ = floor;
    current_ = {root};
    mark(root, +1);
    VertexSet ext;
    for (Vertex u : z2_.neighbors(root)) {
      if (admissible(u)) ext.push_back(u);
    }
    extend(ext);
    mark(root, -1);
  }

 private:
  bool admissible(Vertex u) const { return !floor_ || u > *floor_; }

  // marks_ counts how many chosen vertices have u in their closed neighbourhood.
  void mark(Vertex v, int delta) {
    marks_[v - z2_.offset()] += delta;
    for (Vertex u : z2_.neighbors(v)) marks_[u - z2_.offset()] += delta;
  }

  void extend(VertexSet ext) {
    VertexSet sorted = current_;
    std::sort(sorted.begin(), sorted.end());
    visit_(sorted);
    if (current_.size() >= max_size_) return;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      VertexSet next = ext;
      for (Vertex u : z2_.neighbors(w)) {
        if (admissible(u) && marks_[u - z2_.offset()] == 0) next.push_back(u);
      }
      current_.push_back(w);
      mark(w, +1);
      extend(std::move(next));
      mark(w, -1);
      current_.pop_back();
    }
  }

  const Z2Graph& z2_;
  std::uint32_t max_size_;
  const std::function<void(const VertexSet&)>& visit_;
  std::vector<int> marks_;
  std::optional<Vertex> floor_;
  VertexSet current_;
};

}  // namespace

void for_each_polymer(const Hypergraph& g, const Z2Graph& z2, std::uint32_t b, std::optional<Vertex> root,
                      const std::function<void(const VertexSet&)>& visit) {
  if (b == 0) throw InputError("polymer order bound b must be at least 1");
  ConnectedSetGrower grower(z2, b, visit);
  if (root) {
    if (*root >= g.num_vertices() || g.class_of(*root) != z2.cls()) {
      throw InputError("root vertex is not in class " + std::to_string(z2.cls()));
    }
    grower.grow_from(*root, std::nullopt);
    return;
  }
  for (std::uint32_t i = 0; i < z2.size(); ++i) {
    const Vertex v = z2.offset() + i;
    grower.grow_from(v, v);
  }
}

std::vector<Polymer> enumerate_polymers(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                                        std::optional<Vertex> root) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range");
  const Z2Graph z2(g, cls);
  std::vector<Polymer> out;
  for_each_polymer(g, z2, b, root, [&](const VertexSet& s) {
    Polymer p;
    p.cls = cls;
    p.vertices = s;
    p.neighborhood = neighborhood(g, s);
    out.push_back(std::move(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

ExactRational polymer_weight(const Hypergraph& g, const Polymer& s) {
  if (s.vertices.empty()) throw InputError("empty polymer");
  const LinkGraph lg = link_graph(g, s.vertices);
  return make_rational(count_independent_sets(lg.to_set_system()), pow2(lg.vertices.size()));
}

bool compatible(const Polymer& s, const Polymer& t) {
  if (s == t) return false;
  auto a = s.neighborhood.begin();
  auto b = t.neighborhood.begin();
  while (a != s.neighborhood.end() && b != t.neighborhood.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

std::size_t PolymerSystem::add(ExactRational weight, std::uint32_t order, const std::vector<std::size_t>& clashes) {
  const std::size_t id = size();
  weights.push_back(std::move(weight));
  orders.push_back(order);
  for (auto& row : incompatible) row.push_back(false);
  incompatible.emplace_back(id + 1, false);
  incompatible[id][id] = true;
  for (auto c : clashes) {
    if (c >= id) throw InputError("incompatibility must reference an earlier polymer");
    incompatible[id][c] = incompatible[c][id] = true;
  }
  return id;
}

PolymerSystem PolymerSystem::from_polymers(const Hypergraph& g, const std::vector<Polymer>& polymers) {
  PolymerSystem model;
  for (std::size_t i = 0; i < polymers.size(); ++i) {
    std::vector<std::size_t> clashes;
    for (std::size_t j = 0; j < i; ++j) {
      if (!compatible(polymers[i], polymers[j])) clashes.push_back(j);
    }
    model.add(polymer_weight(g, polymers[i]), static_cast<std::uint32_t>(polymers[i].order()), clashes);
  }
  return model;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::size_t h = 0;
    for (auto w : b) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

// Weighted independence polynomial of the incompatibility graph at the given
// weights, with component splitting and memoisation on the available set.
class FamilySum {
 public:
  explicit FamilySum(const PolymerSystem& model) : model_(model), words_((model.size() + 63) / 64) {
    closed_.assign(model.size(), Bits(words_, 0));
    for (std::size_t i = 0; i < model.size(); ++i) {
      for (std::size_t j = 0; j < model.size(); ++j) {
        if (model.incompatible[i][j] || i == j) closed_[i][j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }

  ExactRational all() {
    Bits avail(words_, 0);
    for (std::size_t i = 0; i < model_.size(); ++i) avail[i / 64] |= std::uint64_t{1} << (i % 64);
    return solve(avail);
  }

 private:
  ExactRational solve(const Bits& avail) {
    if (!any(avail)) return 1;
    if (auto it = memo_.find(avail); it != memo_.end()) return it->second;

    // Split off the component of the lowest available polymer.
    Bits comp(words_, 0);
    Bits frontier(words_, 0);
    const std::size_t first = lowest(avail);
    set(comp, first);
    set(frontier, first);
    while (any(frontier)) {
      const std::size_t i = lowest(frontier);
      frontier[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      for (std::size_t w = 0; w < words_; ++w) {
        const std::uint64_t fresh = closed_[i][w] & avail[w] & ~comp[w];
        comp[w] |= fresh;
        frontier[w] |= fresh;
      }
    }
    Bits rest(words_);
    bool split = false;
    for (std::size_t w = 0; w < words_; ++w) {
      rest[w] = avail[w] & ~comp[w];
      split = split || rest[w] != 0;
    }
    ExactRational result;
    if (split) {
      result = solve(comp) * solve(rest);
    } else {
      Bits without = avail;
      without[first / 64] &= ~(std::uint64_t{1} << (first % 64));
      Bits with(words_);
      for (std::size_t w = 0; w < words_; ++w) with[w] = avail[w] & ~closed_[first][w];
      result = solve(without) + model_.weights[first] * solve(with);
    }
    memo_.emplace(avail, result);
    return result;
  }

  static std::size_t lowest(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w) {
      if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
    }
    return b.size() * 64;
  }
  static void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  const PolymerSystem& model_;
  std::size_t words_;
  std::vector<Bits> closed_;
  std::unordered_map<Bits, ExactRational, BitsHash> memo_;
};

}  // namespace

ExactRational partition_function(const PolymerSystem& model, std::size_t cap) {
  if (model.size() > cap) {
    throw BudgetExceeded("partition function refused: " + std::to_string(model.size()) +
                         " polymers exceeds cap " + std::to_string(cap));
  }
  FamilySum sum(model);
  ExactRational xi = sum.all();
  xi.canonicalize();
  return xi;
}

ExactRational partition_function(const Hypergraph& g, std::uint32_t cls, std::uint32_t b, std::size_t cap) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range");
  if (b == 0) return 1;
  const auto polymers = enumerate_polymers(g, cls, b);
  if (polymers.size() > cap) {
    throw BudgetExceeded("partition function refused: " + std::to_string(polymers.size()) +
                         " polymers exceeds cap " + std::to_string(cap));
  }
  return partition_function(PolymerSystem::from_polymers(g, polymers), cap);
}

namespace {

std::uint32_t require_regular(const Hypergraph& g) {
  const auto r = regular_degree(g);
  if (!r || *r == 0) throw InputError("hypergraph is not r-regular with r >= 1");
  return *r;
}

// Upper bounds on f(S), g(S) and w(S) exp(f(S) + g(S)).
KpTerm kp_term(const Hypergraph& g, const Polymer& s, std::uint32_t r, const Real& log_gamma_up) {
  const ExactRational w = polymer_weight(g, s);
  const long order = static_cast<long>(s.order());
  Real f = Real::div(Real(static_cast<long>(g.k() - 1) * order), Real(static_cast<long>(r)), MPFR_RNDU);
  Real log_2s = Real::log(Real(2 * order), MPFR_RNDU);
  Real gg = Real::mul(Real::mul(log_gamma_up, Real(static_cast<long>(r)), MPFR_RNDU), log_2s, MPFR_RNDU);
  Real term = Real::mul(Real(w, MPFR_RNDU), Real::exp(Real::add(f, gg, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
  return KpTerm{s, w, std::move(f), std::move(gg), std::move(term)};
}

}  // namespace

KpTerms kp_sum(const Hypergraph& g, std::uint32_t cls, Vertex u, std::uint32_t b, std::size_t cap) {
  const std::uint32_t r = require_regular(g);
  if (u >= g.num_vertices() || g.class_of(u) != cls) {
    throw InputError("root vertex is not in class " + std::to_string(cls));
  }
  KpTerms out;
  out.root = u;
  out.b = b;
  out.r = r;
  out.rhs = ExactRational(1, static_cast<unsigned long>(r) * r * r);
  out.lhs = Real(0);
  if (b == 0) return out;
  const auto polymers = enumerate_polymers(g, cls, b, u);
  if (polymers.size() > cap) {
    throw BudgetExceeded("kp sum refused: " + std::to_string(polymers.size()) + " polymers exceeds cap " +
                         std::to_string(cap));
  }
  const Real log_gamma_up = Real::log_of(gamma_k(g.k()), MPFR_RNDU);
  for (const auto& s : polymers) {
    KpTerm t = kp_term(g, s, r, log_gamma_up);
    out.lhs = Real::add(out.lhs, t.term, MPFR_RNDU);
    out.terms.push_back(std::move(t));
  }
  out.holds = out.lhs.compare(out.rhs) <= 0;
  return out;
}

KpConditionReport kp_condition(const Hypergraph& g, std::uint32_t cls, std::uint32_t b, std::size_t cap) {
  const std::uint32_t r = require_regular(g);
  KpConditionReport report;
  if (b == 0) return report;
  const auto polymers = enumerate_polymers(g, cls, b);
  if (polymers.size() > cap) {
    throw BudgetExceeded("kp condition refused: " + std::to_string(polymers.size()) + " polymers exceeds cap " +
                         std::to_string(cap));
  }
  report.polymers = polymers.size();
  const Real log_gamma_up = Real::log_of(gamma_k(g.k()), MPFR_RNDU);
  std::vector<Real> terms;
  terms.reserve(polymers.size());
  for (const auto& s : polymers) terms.push_back(kp_term(g, s, r, log_gamma_up).term);

  Real worst_ratio(-1);
  for (std::size_t i = 0; i < polymers.size(); ++i) {
    Real lhs(0);
    for (std::size_t j = 0; j < polymers.size(); ++j) {
      if (!compatible(polymers[i], polymers[j])) lhs = Real::add(lhs, terms[j], MPFR_RNDU);
    }
    Real f_down = Real::div(Real(static_cast<long>(g.k() - 1) * static_cast<long>(polymers[i].order())),
                            Real(static_cast<long>(r)), MPFR_RNDD);
    if (lhs > f_down) report.holds = false;
    Real ratio = Real::div(lhs, f_down, MPFR_RNDU);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      report.worst = polymers[i];
      report.worst_lhs = lhs;
      report.worst_f = f_down;
    }
  }
  return report;
}

namespace {

class MatchingSearch {
 public:
  explicit MatchingSearch(const SetSystem& h) : h_(h), used_(h.num_vertices, false) {
    min_size_ = h.edges.empty() ? 1 : h.edges.front().size();
    for (const auto& e : h.edges) min_size_ = std::min(min_size_, e.size());
    min_size_ = std::max<std::size_t>(min_size_, 1);
    // Greedy start, shortest edges first.
    order_.resize(h.edges.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return h.edges[a].size() < h.edges[b].size(); });
    std::vector<bool> taken(h.num_vertices, false);
    for (auto i : order_) {
      const auto& e = h.edges[i];
      if (std::none_of(e.begin(), e.end(), [&](Vertex x) { return taken[x]; })) {
        for (Vertex x : e) taken[x] = true;
        ++best_;
      }
    }
  }

  std::uint32_t run() {
    recurse(0, 0, h_.num_vertices);
    return best_;
  }

 private:
  void recurse(std::size_t i, std::uint32_t current, std::size_t free_vertices) {
    const std::size_t remaining = order_.size() - i;
    const std::size_t by_edges = current + remaining;
    const std::size_t by_vertices = current + free_vertices / min_size_;
    if (std::min(by_edges, by_vertices) <= best_) return;
    if (i == order_.size()) {
      best_ = current;
      return;
    }
    const auto& e = h_.edges[order_[i]];
    if (std::none_of(e.begin(), e.end(), [&](Vertex x) { return used_[x]; })) {
      for (Vertex x : e) used_[x] = true;
      recurse(i + 1, current + 1, free_vertices - e.size());
      for (Vertex x : e) used_[x] = false;
    }
    recurse(i + 1, current, free_vertices);
  }

  const SetSystem& h_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::size_t min_size_ = 1;
  std::uint32_t best_ = 0;
};

}  // namespace

std::uint32_t max_matching_size(const SetSystem& h) {
  for (const auto& e : h.edges) {
    if (e.empty()) throw InputError("matching over an empty edge is undefined");
  }
  MatchingSearch search(h);
  return search.run();
}

std::uint32_t max_matching_size(const LinkGraph& l) { return max_matching_size(l.to_set_system()); }

ExactRational matching_weight_bound(std::uint32_t k, std::uint32_t m) {
  return qpow(gamma_k(k), -static_cast<std::int64_t>(m));
}

ExpansionMatchingCheck expansion_matching_check(const Hypergraph& g, const Polymer& s, double beta, std::uint32_t r) {
  ExpansionMatchingCheck check;
  check.neighborhood = s.neighborhood.size();
  const long double scale = static_cast<long double>(r) * static_cast<long double>(s.order());
  check.applicable = static_cast<long double>(check.neighborhood) >= (g.k() - 2 + static_cast<long double>(beta)) * scale;
  if (!check.applicable) return check;
  check.matching = max_matching_size(link_graph(g, s.vertices));
  check.holds = static_cast<long double>(check.matching) >= static_cast<long double>(beta) / (g.k() - 1) * scale;
  return check;
}

bool two_linked_count_within_bound(std::uint32_t k, std::uint32_t r, std::uint32_t s, const BigCount& count) {
  if (s == 0) throw InputError("order s must be at least 1");
  const Real e_down = Real::e(MPFR_RNDD);
  Real base = Real::mul(Real::mul(Real(static_cast<long>(k - 1)), e_down, MPFR_RNDD),
                        Real(static_cast<long>(r) * static_cast<long>(r)), MPFR_RNDD);
  Real power(base.precision());
  mpfr_pow_ui(power.get(), base.get(), s - 1, MPFR_RNDD);
  Real bound = Real::mul(e_down, power, MPFR_RNDD);
  Real c(base.precision());
  mpfr_set_z(c.get(), count.get_mpz_t(), MPFR_RNDU);
  return c <= bound;
}

std::map<std::uint32_t, std::uint32_t> min_matching_by_order(const Hypergraph& g, std::uint32_t cls, std::uint32_t b) {
  std::map<std::uint32_t, std::uint32_t> out;
  for (const auto& s : enumerate_polymers(g, cls, b)) {
    const auto m = max_matching_size(link_graph(g, s.vertices));
    const auto order = static_cast<std::uint32_t>(s.order());
    auto [it, fresh] = out.try_emplace(order, m);
    if (!fresh) it->second = std::min(it->second, m);
  }
  return out;
}

}  // namespace hyperis

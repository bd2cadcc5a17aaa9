#include "loose_cycles.hpp"

namespace hyperis::detail {

namespace {

struct NodeCapReached {};

class CycleDfs {
 public:
  CycleDfs(const std::vector<Edge>& edges, const std::vector<std::vector<std::uint32_t>>& incidence,
           std::uint32_t num_vertices, std::uint32_t max_length, std::uint64_t node_cap)
      : edges_(edges), incidence_(incidence), used_(num_vertices, false), max_length_(max_length),
        node_cap_(node_cap) {}

  // Cycles whose first edge is `first` and whose other edges all have index
  // greater than min_other (or any index when min_other is nullopt).
  bool search_from(std::uint32_t first, std::optional<std::uint32_t> min_other) {
    first_ = first;
    min_other_ = min_other;
    const Edge& e0 = edges_[first];
    for (Vertex start : e0) {
      for (Vertex exit : e0) {
        if (exit == start) continue;
        for (Vertex x : e0) used_[x] = true;
        path_edges_ = {first};
        joints_ = {start, exit};
        start_ = start;
        const bool hit = extend(exit);
        for (Vertex x : e0) used_[x] = false;
        if (hit) return true;
      }
    }
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }

  std::vector<Vertex> witness() const {
    // Each edge contributes its entry joint followed by its interior vertices.
    std::vector<Vertex> seq;
    for (std::size_t i = 0; i < path_edges_.size(); ++i) {
      const Vertex in = joints_[i];
      const Vertex out = joints_[(i + 1) % path_edges_.size()];
      seq.push_back(in);
      for (Vertex x : edges_[path_edges_[i]]) {
        if (x != in && x != out) seq.push_back(x);
      }
    }
    return seq;
  }

  std::uint32_t length() const { return static_cast<std::uint32_t>(path_edges_.size()); }

 private:
  bool allowed(std::uint32_t f) const {
    if (f == first_) return false;
    return !min_other_ || f > *min_other_;
  }

  bool extend(Vertex cur) {
    if (++nodes_ > node_cap_) throw NodeCapReached{};
    const std::uint32_t len = static_cast<std::uint32_t>(path_edges_.size());
    for (auto f : incidence_[cur]) {
      if (!allowed(f) || f == path_edges_.back()) continue;
      const Edge& e = edges_[f];
      bool has_start = false;
      bool clash = false;
      for (Vertex x : e) {
        if (x == cur) continue;
        if (x == start_) {
          has_start = true;
        } else if (used_[x]) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      if (has_start) {
        // Closing edge. Each cycle is seen in both orientations; keep one.
        if (len + 1 >= 3 && path_edges_[1] < f) {
          path_edges_.push_back(f);
          return true;
        }
        continue;
      }
      if (len + 1 >= max_length_) continue;
      for (Vertex x : e) used_[x] = true;
      used_[cur] = true;
      path_edges_.push_back(f);
      for (Vertex next : e) {
        if (next == cur) continue;
        joints_.push_back(next);
        if (extend(next)) return true;
        joints_.pop_back();
      }
      path_edges_.pop_back();
      for (Vertex x : e) {
        if (x != cur) used_[x] = false;
      }
    }
    return false;
  }

  const std::vector<Edge>& edges_;
  const std::vector<std::vector<std::uint32_t>>& incidence_;
  std::vector<bool> used_;
  std::uint32_t max_length_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  std::uint32_t first_ = 0;
  std::optional<std::uint32_t> min_other_;
  Vertex start_ = 0;
  std::vector<std::uint32_t> path_edges_;
  std::vector<Vertex> joints_;
};

}  // namespace

LooseCycleSearch find_loose_cycle(const std::vector<Edge>& edges,
                                  const std::vector<std::vector<std::uint32_t>>& incidence,
                                  std::uint32_t num_vertices, std::uint32_t max_length,
                                  std::optional<std::uint32_t> through_edge, std::uint64_t node_cap) {
  LooseCycleSearch result;
  CycleDfs dfs(edges, incidence, num_vertices, max_length, node_cap);
  try {
    bool hit = false;
    if (through_edge) {
      hit = dfs.search_from(*through_edge, std::nullopt);
    } else {
      for (std::uint32_t e = 0; e < edges.size() && !hit; ++e) hit = dfs.search_from(e, e);
    }
    if (hit) {
      result.status = CycleSearchStatus::kFound;
      result.witness = dfs.witness();
      result.length = dfs.length();
    }
  } catch (const NodeCapReached&) {
    result.status = CycleSearchStatus::kIndeterminate;
  }
  result.nodes_visited = dfs.nodes();
  return result;
}

}  // namespace hyperis::detail

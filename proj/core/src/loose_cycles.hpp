#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperis/hypergraph.hpp"

namespace hyperis::detail {

// Loose-cycle DFS over a raw edge list, shared by girth_at_most and the
// generator's incremental girth rejection. With through_edge set, only cycles
// using that edge are searched.
LooseCycleSearch find_loose_cycle(const std::vector<Edge>& edges,
                                  const std::vector<std::vector<std::uint32_t>>& incidence,
                                  std::uint32_t num_vertices, std::uint32_t max_length,
                                  std::optional<std::uint32_t> through_edge, std::uint64_t node_cap);

}  // namespace hyperis::detail

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/rational.hpp"

namespace hyperis {

// Largest vertex count the enumeration oracles accept by default. The
// HYPERIS_ENUM_CAP environment variable overrides it.
inline constexpr std::uint32_t kDefaultEnumerationCap = 24;
std::uint32_t default_enumeration_cap();

// Number of vertex subsets containing no edge. Backtracking with
// connected-component factorisation and memoisation of residual subproblems.
BigCount count_independent_sets(const SetSystem& h);
BigCount count_independent_sets(const Hypergraph& g);

// Same quantity by filtering all 2^|V| subsets. Throws BudgetExceeded above
// `cap` vertices.
BigCount count_independent_sets_brute(const SetSystem& h,
                                      std::uint32_t cap = kDefaultEnumerationCap);

SetSystem as_set_system(const Hypergraph& g);

struct DefectClassCount {
  std::uint32_t cls = 0;
  std::uint32_t bound = 0;
  BigCount count;
};

// Independent sets of g enumerated once and bucketed by their trace I ∩ Z.
// Answers count_with_defect_class for every b without re-enumerating.
class DefectTraceTable {
 public:
  DefectTraceTable(const Hypergraph& g, std::uint32_t cls,
                   std::uint32_t cap = default_enumeration_cap());

  std::uint32_t cls() const { return cls_; }
  // Independent sets whose trace on Z has all Z2-components of order <= b.
  BigCount count(std::uint32_t b) const;
  BigCount total() const;
  // Independent sets with trace exactly `trace` (bit i = i-th vertex of Z).
  std::uint64_t with_trace(std::uint64_t trace) const { return counts_[trace]; }

 private:
  std::uint32_t cls_;
  std::vector<std::uint64_t> counts_;
  // Order of the largest Z2-component of each trace.
  std::vector<std::uint32_t> largest_component_;
};

// Exhaustive count of independent sets I for which every component of
// Z2[I ∩ Z] has order at most b. Refuses (BudgetExceeded) above `cap`
// vertices.
DefectClassCount count_with_defect_class(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                                         std::uint32_t cap = default_enumeration_cap());

// Independent sets I with I ∩ Z = T, via |I(L(T))| * 2^{|V \ Z| - |N(T)|}.
BigCount count_completions(const Hypergraph& g, std::uint32_t cls, std::span<const Vertex> t);

}  // namespace hyperis

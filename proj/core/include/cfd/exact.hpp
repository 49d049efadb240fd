#pragma once

// Exact branch-and-bound for minimum-cost coloured flow decomposition on
// small instances. Used as ground truth for the polynomial algorithms and
// the reductions.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cfd/network.hpp"

namespace cfd {

enum class CostMode {
  kColours,  // sum over paths of their distinct-colour counts
  kPaths,    // one per path: minimum path count
};

enum class ValueMode {
  // Every extraction value in [1, bottleneck]. Complete.
  kAll,
  // Only the bottleneck value. Much smaller search; not proven complete.
  kSaturating,
};

struct ExactOptions {
  CostMode cost_mode = CostMode::kColours;
  ValueMode value_mode = ValueMode::kAll;
  std::int64_t node_budget = 10'000'000;
  std::size_t memo_cap = 1'000'000;
  // Only decompositions with at most this many paths are considered.
  std::optional<int> path_limit;
};

enum class SearchStatus {
  kOptimal,
  kInconclusive,  // node budget exhausted
  kInfeasible,    // no decomposition within path_limit
};

struct ExactResult {
  SearchStatus status = SearchStatus::kInconclusive;
  // Optimum when status is kOptimal; otherwise the best cost found, if any.
  std::optional<Value> cost;
  std::optional<Decomposition> decomposition;
  std::int64_t nodes_explored = 0;
};

enum class Answer { kYes, kNo, kInconclusive };

struct Decision {
  Answer answer = Answer::kInconclusive;
  std::optional<Decomposition> witness;  // set on kYes
  std::int64_t nodes_explored = 0;
};

// Objective value of a decomposition under `mode`.
Value decomposition_objective(const ColouredNetwork& network,
                              const Decomposition& decomposition,
                              CostMode mode);

// Admissible lower bound on the optimum of `mode`. Combines
// ceil(|x| / widest path) times the fewest colours on any path with
// per-arc bounds at clean terminals.
Value lower_bound(const Flow& flow, CostMode mode = CostMode::kColours);

// Throws InvalidInput for invalid flows or more than 64 colours.
ExactResult exact_min_cost(const Flow& flow, const ExactOptions& options = {});

// Is there a decomposition of objective at most k? Stops at the first
// witness found.
Decision decide_k_cost(const Flow& flow, Value k,
                       const ExactOptions& options = {});

}  // namespace cfd

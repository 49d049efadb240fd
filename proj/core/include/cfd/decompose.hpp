#pragma once

#include "cfd/network.hpp"

namespace cfd {

// Classical path/cycle decomposition: repeatedly removes the
// lexicographically smallest (by arc id) simple (s,t)-path with its
// bottleneck value, then splits what is left into cycles. At most n + m
// components; each extraction zeroes at least one arc.
Decomposition flow_decompose(const Flow& flow);

// Repeatedly removes an (s,t)-path of maximum bottleneck value, breaking
// ties by the lexicographically smallest arc-id sequence.
Decomposition greedy_max_value_decompose(const Flow& flow);

// Paths only: the cycles of flow_decompose() dropped and the flow rebuilt
// from the remaining paths. Has the same value as `flow`.
Flow without_circulation(const Flow& flow);

}  // namespace cfd

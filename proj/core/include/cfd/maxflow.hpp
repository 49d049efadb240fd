#pragma once

#include "cfd/network.hpp"

namespace cfd {

struct MaxFlowResult {
  Flow flow;
  Value value = 0;
};

// Maximum integer (s,t)-flow by shortest augmenting paths. Residual arcs
// are scanned in arc-id order, so equal inputs give equal per-arc values.
MaxFlowResult max_flow(const ColouredNetwork& network, VertexId source,
                       VertexId sink);

// Maximum flow when every capacity is a multiple of `lambda`: capacities
// are divided by lambda, solved, and scaled back, so every arc value is a
// multiple of lambda as well.
MaxFlowResult max_flow_value_multiple(const ColouredNetwork& network,
                                      VertexId source, VertexId sink,
                                      Value lambda);

}  // namespace cfd

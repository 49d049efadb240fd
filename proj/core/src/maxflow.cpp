#include "cfd/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cfd {

namespace {

struct ResidualStep {
  std::int32_t arc;
  bool forward;
};

}  // namespace

MaxFlowResult max_flow(const ColouredNetwork& network, VertexId source,
                       VertexId sink) {
  if (!network.contains(source) || !network.contains(sink)) {
    throw InvalidInput("max_flow: source or sink outside vertex range");
  }
  if (source == sink) throw InvalidInput("max_flow: source equals sink");

  const int n = network.vertex_count();
  std::vector<std::vector<ResidualStep>> adjacency(n);
  for (const Arc& arc : network.arcs()) {
    adjacency[arc.tail.index()].push_back({arc.id.value(), true});
    adjacency[arc.head.index()].push_back({arc.id.value(), false});
  }

  std::vector<Value> flow(network.arc_count(), 0);
  std::vector<ResidualStep> parent(n);
  std::vector<char> seen(n);
  Value total = 0;

  auto residual = [&](const ResidualStep& step) {
    const Arc& arc = network.arcs()[step.arc];
    return step.forward ? arc.capacity - flow[step.arc] : flow[step.arc];
  };
  auto step_head = [&](const ResidualStep& step) {
    const Arc& arc = network.arcs()[step.arc];
    return step.forward ? arc.head.value() : arc.tail.value();
  };

  while (true) {
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<int> frontier;
    frontier.push(source.value());
    seen[source.index()] = 1;
    while (!frontier.empty() && !seen[sink.index()]) {
      int v = frontier.front();
      frontier.pop();
      for (const ResidualStep& step : adjacency[v]) {
        int w = step_head(step);
        if (seen[w] || residual(step) <= 0) continue;
        seen[w] = 1;
        parent[w] = step;
        frontier.push(w);
      }
    }
    if (!seen[sink.index()]) break;

    Value bottleneck = std::numeric_limits<Value>::max();
    for (int v = sink.value(); v != source.value();) {
      const ResidualStep& step = parent[v];
      bottleneck = std::min(bottleneck, residual(step));
      const Arc& arc = network.arcs()[step.arc];
      v = step.forward ? arc.tail.value() : arc.head.value();
    }
    for (int v = sink.value(); v != source.value();) {
      const ResidualStep& step = parent[v];
      const Arc& arc = network.arcs()[step.arc];
      flow[step.arc] += step.forward ? bottleneck : -bottleneck;
      v = step.forward ? arc.tail.value() : arc.head.value();
    }
    total += bottleneck;
  }

  return {Flow(network, std::move(flow), source, sink), total};
}

MaxFlowResult max_flow_value_multiple(const ColouredNetwork& network,
                                      VertexId source, VertexId sink,
                                      Value lambda) {
  if (lambda < 1) throw InvalidInput("lambda must be positive");
  ColouredNetwork::Builder scaled(network.vertex_count());
  for (const Arc& arc : network.arcs()) {
    if (arc.capacity % lambda != 0) {
      throw InvalidInput("capacity " + std::to_string(arc.capacity) +
                         " of arc " + std::to_string(arc.id.value()) +
                         " is not a multiple of " + std::to_string(lambda));
    }
    scaled.add_arc(arc.tail, arc.head, arc.capacity / lambda, arc.colour);
  }
  MaxFlowResult unit = max_flow(scaled.build(), source, sink);
  std::vector<Value> values(unit.flow.values().begin(),
                            unit.flow.values().end());
  for (Value& v : values) v *= lambda;
  return {Flow(network, std::move(values), source, sink),
          unit.value * lambda};
}

}  // namespace cfd

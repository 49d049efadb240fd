#include "cfd/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cfd {

ColouredNetwork::ColouredNetwork()
    : data_(std::make_shared<const Data>()) {}

std::vector<Colour> ColouredNetwork::colours() const {
  std::set<Colour> seen;
  for (const Arc& arc : arcs()) seen.insert(arc.colour);
  return {seen.begin(), seen.end()};
}

bool ColouredNetwork::is_acyclic() const {
  // Kahn's algorithm.
  std::vector<int> indegree(vertex_count(), 0);
  for (const Arc& arc : arcs()) ++indegree[arc.head.index()];
  std::vector<int> ready;
  for (int v = 0; v < vertex_count(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++removed;
    for (ArcId a : out_arcs(VertexId(v))) {
      if (--indegree[arc(a).head.index()] == 0) {
        ready.push_back(arc(a).head.value());
      }
    }
  }
  return removed == vertex_count();
}

bool operator==(const ColouredNetwork& lhs, const ColouredNetwork& rhs) {
  if (lhs.data_ == rhs.data_) return true;
  return lhs.vertex_count() == rhs.vertex_count() &&
         lhs.data_->arcs == rhs.data_->arcs;
}

ColouredNetwork::Builder::Builder(int vertex_count)
    : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InvalidInput("negative vertex count");
}

VertexId ColouredNetwork::Builder::add_vertex() {
  return VertexId(vertex_count_++);
}

ArcId ColouredNetwork::Builder::add_arc(VertexId tail, VertexId head,
                                        Value capacity, Colour colour) {
  return add_arc(tail, head, capacity, colour, ArcId(arc_count()));
}

ArcId ColouredNetwork::Builder::add_arc(VertexId tail, VertexId head,
                                        Value capacity, Colour colour,
                                        ArcId origin) {
  auto valid = [&](VertexId v) {
    return v.value() >= 0 && v.value() < vertex_count_;
  };
  if (!valid(tail) || !valid(head)) {
    throw InvalidInput("arc endpoint outside vertex range");
  }
  if (tail == head) {
    throw InvalidInput("self-loop at vertex " + std::to_string(tail.value()));
  }
  if (capacity < 0) throw InvalidInput("negative capacity");
  if (colour < 1) throw InvalidInput("colour labels must be >= 1");
  ArcId id(arc_count());
  arcs_.push_back(Arc{id, tail, head, capacity, colour, origin});
  return id;
}

ColouredNetwork ColouredNetwork::Builder::build() const {
  auto data = std::make_shared<Data>();
  data->vertex_count = vertex_count_;
  data->arcs = arcs_;
  data->out.resize(vertex_count_);
  data->in.resize(vertex_count_);
  for (const Arc& arc : arcs_) {
    data->out[arc.tail.index()].push_back(arc.id);
    data->in[arc.head.index()].push_back(arc.id);
  }
  return ColouredNetwork(std::move(data));
}

Flow::Flow(ColouredNetwork network, std::vector<Value> values,
           VertexId source, VertexId sink)
    : network_(std::move(network)),
      values_(std::move(values)),
      source_(source),
      sink_(sink) {
  if (static_cast<int>(values_.size()) != network_.arc_count()) {
    throw InvalidInput("flow has " + std::to_string(values_.size()) +
                       " values for " +
                       std::to_string(network_.arc_count()) + " arcs");
  }
  if (!network_.contains(source_) || !network_.contains(sink_)) {
    throw InvalidInput("source or sink outside vertex range");
  }
  if (source_ == sink_) throw InvalidInput("source and sink must differ");
  for (Value v : values_) {
    if (v < 0) throw InvalidInput("negative flow value");
  }
}

Flow Flow::zero(ColouredNetwork network, VertexId source, VertexId sink) {
  std::vector<Value> values(network.arc_count(), 0);
  return Flow(std::move(network), std::move(values), source, sink);
}

Flow Flow::saturating(ColouredNetwork network, VertexId source,
                      VertexId sink) {
  std::vector<Value> values;
  values.reserve(network.arc_count());
  for (const Arc& arc : network.arcs()) values.push_back(arc.capacity);
  return Flow(std::move(network), std::move(values), source, sink);
}

Value Flow::value() const { return balance(*this, source_); }

std::vector<Value> Flow::positive_values() const {
  std::set<Value> seen;
  for (Value v : values_) {
    if (v > 0) seen.insert(v);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Colour> Flow::support_colours() const {
  std::set<Colour> seen;
  for (const Arc& arc : network_.arcs()) {
    if (values_[arc.id.index()] > 0) seen.insert(arc.colour);
  }
  return {seen.begin(), seen.end()};
}

bool operator==(const Flow& lhs, const Flow& rhs) {
  return lhs.source_ == rhs.source_ && lhs.sink_ == rhs.sink_ &&
         lhs.values_ == rhs.values_ && lhs.network_ == rhs.network_;
}

Value balance(const Flow& flow, VertexId v) {
  const ColouredNetwork& net = flow.network();
  if (!net.contains(v)) {
    throw InvalidInput("vertex " + std::to_string(v.value()) +
                       " outside vertex range");
  }
  Value out = 0;
  Value in = 0;
  for (ArcId a : net.out_arcs(v)) out += flow[a];
  for (ArcId a : net.in_arcs(v)) in += flow[a];
  return out - in;
}

FlowReport validate_flow(const Flow& flow) {
  const ColouredNetwork& net = flow.network();
  FlowReport report;
  for (const Arc& arc : net.arcs()) {
    if (flow[arc.id] > arc.capacity) {
      report.capacity_violations.push_back({arc.id, flow[arc.id],
                                            arc.capacity});
    }
  }
  for (int v = 0; v < net.vertex_count(); ++v) {
    VertexId vertex(v);
    if (vertex == flow.source() || vertex == flow.sink()) continue;
    if (Value b = balance(flow, vertex); b != 0) {
      report.conservation_violations.push_back({vertex, b});
    }
  }
  report.value = flow.value();
  report.reversed = report.value < 0;
  return report;
}

void require_valid(const Flow& flow) {
  FlowReport report = validate_flow(flow);
  if (!report.ok()) throw InvalidInput("invalid flow: " + report.describe());
}

std::string FlowReport::describe() const {
  std::ostringstream out;
  if (ok()) {
    out << "valid flow of value " << value;
    return out.str();
  }
  const char* sep = "";
  for (const auto& v : capacity_violations) {
    out << sep << "arc " << v.arc.value() << " carries " << v.flow
        << " above capacity " << v.capacity;
    sep = "; ";
  }
  for (const auto& v : conservation_violations) {
    out << sep << "vertex " << v.vertex.value() << " has balance "
        << v.balance;
    sep = "; ";
  }
  if (reversed) out << sep << "source balance " << value << " is negative";
  return out.str();
}

std::string DecompositionReport::describe() const {
  std::ostringstream out;
  if (ok()) {
    out << "valid decomposition of cost " << cost;
    return out.str();
  }
  const char* sep = "";
  for (const auto& e : component_errors) {
    out << sep << (e.is_cycle ? "cycle " : "path ") << e.index << ": "
        << e.message;
    sep = "; ";
  }
  for (const auto& m : mismatches) {
    out << sep << "arc " << m.arc.value() << " expects " << m.expected
        << " but components sum to " << m.actual;
    sep = "; ";
  }
  return out.str();
}

ColouredNetwork support(const Flow& flow, Value threshold) {
  if (threshold < 1) throw InvalidInput("support threshold must be >= 1");
  const ColouredNetwork& net = flow.network();
  ColouredNetwork::Builder builder(net.vertex_count());
  for (const Arc& arc : net.arcs()) {
    if (flow[arc.id] >= threshold) {
      builder.add_arc(arc.tail, arc.head, flow[arc.id], arc.colour, arc.id);
    }
  }
  return builder.build();
}

int path_colour_count(const ColouredNetwork& network,
                      std::span<const ArcId> arcs) {
  std::vector<Colour> colours;
  colours.reserve(arcs.size());
  for (ArcId a : arcs) colours.push_back(network.arc(a).colour);
  std::sort(colours.begin(), colours.end());
  return static_cast<int>(
      std::unique(colours.begin(), colours.end()) - colours.begin());
}

int path_colour_count(const ColouredNetwork& network, const PathFlow& path) {
  return path_colour_count(network, path.arcs);
}

Value decomposition_cost(const ColouredNetwork& network,
                         const Decomposition& decomposition) {
  Value cost = 0;
  for (const PathFlow& path : decomposition.paths) {
    cost += path_colour_count(network, path);
  }
  return cost;
}

Decomposition with_cost(const ColouredNetwork& network,
                        Decomposition decomposition) {
  decomposition.cost = decomposition_cost(network, decomposition);
  return decomposition;
}

ColouredNetwork colour_span(const ColouredNetwork& network, Colour colour) {
  ColouredNetwork::Builder builder(network.vertex_count());
  for (const Arc& arc : network.arcs()) {
    if (arc.colour == colour) {
      builder.add_arc(arc.tail, arc.head, arc.capacity, arc.colour, arc.id);
    }
  }
  return builder.build();
}

std::vector<VertexId> walk_vertices(const ColouredNetwork& network,
                                    std::span<const ArcId> arcs) {
  std::vector<VertexId> vertices;
  if (arcs.empty()) return vertices;
  for (ArcId a : arcs) {
    if (!network.contains(a)) {
      throw InvalidInput("unknown arc id " + std::to_string(a.value()));
    }
  }
  vertices.push_back(network.arc(arcs.front()).tail);
  for (ArcId a : arcs) {
    const Arc& arc = network.arc(a);
    if (arc.tail != vertices.back()) {
      throw InvalidInput("arc " + std::to_string(a.value()) +
                         " does not continue the walk");
    }
    vertices.push_back(arc.head);
  }
  return vertices;
}

namespace {

// Returns an error message, or an empty string if the walk is a simple
// path from `from` to `to` (or a simple cycle when `closed`).
std::string check_walk(const ColouredNetwork& network,
                       std::span<const ArcId> arcs, bool closed,
                       VertexId from, VertexId to) {
  if (arcs.empty()) return "no arcs";
  std::vector<VertexId> vertices;
  try {
    vertices = walk_vertices(network, arcs);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  if (closed) {
    if (vertices.front() != vertices.back()) return "walk is not closed";
    vertices.pop_back();
  } else {
    if (vertices.front() != from) return "does not start at the source";
    if (vertices.back() != to) return "does not end at the sink";
  }
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return "repeats a vertex";
  }
  return {};
}

}  // namespace

DecompositionReport verify_decomposition(const Flow& flow,
                                         const Decomposition& decomposition) {
  const ColouredNetwork& net = flow.network();
  DecompositionReport report;
  std::vector<Value> sums(net.arc_count(), 0);

  auto accumulate = [&](std::span<const ArcId> arcs, Value value,
                        bool is_cycle, std::size_t index) {
    std::string error = check_walk(net, arcs, is_cycle, flow.source(),
                                   flow.sink());
    if (value <= 0) {
      error += error.empty() ? "" : ", ";
      error += "non-positive value " + std::to_string(value);
    }
    if (!error.empty()) {
      report.component_errors.push_back({is_cycle, index, error});
    }
    for (ArcId a : arcs) {
      if (net.contains(a)) sums[a.index()] += value;
    }
  };

  for (std::size_t i = 0; i < decomposition.paths.size(); ++i) {
    const PathFlow& p = decomposition.paths[i];
    accumulate(p.arcs, p.value, false, i);
  }
  for (std::size_t i = 0; i < decomposition.cycles.size(); ++i) {
    const CycleFlow& c = decomposition.cycles[i];
    accumulate(c.arcs, c.value, true, i);
  }
  for (const Arc& arc : net.arcs()) {
    if (sums[arc.id.index()] != flow[arc.id]) {
      report.mismatches.push_back({arc.id, flow[arc.id],
                                   sums[arc.id.index()]});
    }
  }
  for (const PathFlow& p : decomposition.paths) {
    bool known = std::all_of(p.arcs.begin(), p.arcs.end(),
                             [&](ArcId a) { return net.contains(a); });
    if (known) report.cost += path_colour_count(net, p);
  }
  return report;
}

std::vector<Value> lift_to_parent(const Flow& flow, int parent_arc_count) {
  std::vector<Value> lifted(parent_arc_count, 0);
  for (const Arc& arc : flow.network().arcs()) {
    if (arc.origin.value() < 0 || arc.origin.value() >= parent_arc_count) {
      throw InvalidInput("arc origin outside the parent network");
    }
    lifted[arc.origin.index()] += flow[arc.id];
  }
  return lifted;
}

}  // namespace cfd

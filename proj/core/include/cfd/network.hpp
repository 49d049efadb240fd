#pragma once

// Arc-coloured networks, integer (s,t)-flows and their path/cycle
// decompositions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfd {

using Value = std::int64_t;
using Colour = std::int32_t;

// Dense index into a network's vertex or arc table. The tag keeps vertex
// and arc indices from being mixed up.
template <typename Tag>
class Index {
 public:
  constexpr Index() = default;
  constexpr explicit Index(std::int32_t value) : value_(value) {}

  constexpr std::int32_t value() const { return value_; }
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(value_);
  }

  friend constexpr auto operator<=>(Index, Index) = default;

 private:
  std::int32_t value_ = -1;
};

using VertexId = Index<struct VertexTag>;
using ArcId = Index<struct ArcTag>;

// Thrown when an operation's precondition does not hold for its input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Arc {
  ArcId id;
  VertexId tail;
  VertexId head;
  Value capacity = 0;
  Colour colour = 1;
  // Arc of the parent network this arc was derived from. Equal to `id`
  // for networks that were not derived from another one.
  ArcId origin;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Immutable multidigraph with per-arc capacity and colour. Copies share
// the underlying storage.
class ColouredNetwork {
 public:
  class Builder;

  ColouredNetwork();

  int vertex_count() const { return data_->vertex_count; }
  int arc_count() const { return static_cast<int>(data_->arcs.size()); }

  std::span<const Arc> arcs() const { return data_->arcs; }
  const Arc& arc(ArcId id) const { return data_->arcs.at(id.index()); }

  // Arc ids leaving / entering `v`, in increasing id order.
  std::span<const ArcId> out_arcs(VertexId v) const {
    return data_->out.at(v.index());
  }
  std::span<const ArcId> in_arcs(VertexId v) const {
    return data_->in.at(v.index());
  }

  bool contains(VertexId v) const {
    return v.value() >= 0 && v.value() < vertex_count();
  }
  bool contains(ArcId a) const {
    return a.value() >= 0 && a.value() < arc_count();
  }

  // Distinct colour labels, ascending.
  std::vector<Colour> colours() const;

  bool is_acyclic() const;

  // Structural equality: same vertex count and identical arc tables.
  friend bool operator==(const ColouredNetwork& lhs,
                         const ColouredNetwork& rhs);

 private:
  struct Data {
    int vertex_count = 0;
    std::vector<Arc> arcs;
    std::vector<std::vector<ArcId>> out;
    std::vector<std::vector<ArcId>> in;
  };

  explicit ColouredNetwork(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

class ColouredNetwork::Builder {
 public:
  explicit Builder(int vertex_count = 0);

  VertexId add_vertex();

  // Appends an arc and returns its id. Self-loops, unknown endpoints,
  // negative capacities and colours below 1 throw InvalidInput.
  ArcId add_arc(VertexId tail, VertexId head, Value capacity, Colour colour);
  ArcId add_arc(VertexId tail, VertexId head, Value capacity, Colour colour,
                ArcId origin);

  int vertex_count() const { return vertex_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  ColouredNetwork build() const;

 private:
  int vertex_count_;
  std::vector<Arc> arcs_;
};

// Per-arc integer flow on a network with designated source and sink. A Flow
// object may violate capacities or conservation; validate_flow() says so.
class Flow {
 public:
  // Throws InvalidInput if the value vector does not match the arc count,
  // a value is negative, or source/sink are invalid or equal.
  Flow(ColouredNetwork network, std::vector<Value> values, VertexId source,
       VertexId sink);

  static Flow zero(ColouredNetwork network, VertexId source, VertexId sink);

  // The flow that saturates every arc (x = u).
  static Flow saturating(ColouredNetwork network, VertexId source,
                         VertexId sink);

  const ColouredNetwork& network() const { return network_; }
  std::span<const Value> values() const { return values_; }
  Value operator[](ArcId a) const { return values_.at(a.index()); }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  // |x| = b_x(s).
  Value value() const;

  // Sorted distinct positive arc values.
  std::vector<Value> positive_values() const;

  // Sorted distinct colours of arcs carrying positive flow.
  std::vector<Colour> support_colours() const;

  friend bool operator==(const Flow& lhs, const Flow& rhs);

 private:
  ColouredNetwork network_;
  std::vector<Value> values_;
  VertexId source_;
  VertexId sink_;
};

struct PathFlow {
  std::vector<ArcId> arcs;
  Value value = 0;

  friend bool operator==(const PathFlow&, const PathFlow&) = default;
};

struct CycleFlow {
  std::vector<ArcId> arcs;
  Value value = 0;

  friend bool operator==(const CycleFlow&, const CycleFlow&) = default;
};

struct Decomposition {
  std::vector<PathFlow> paths;
  std::vector<CycleFlow> cycles;
  // Sum of distinct-colour counts over `paths`; cycles cost nothing.
  Value cost = 0;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct Instance {
  Flow flow;
  std::optional<Value> bound;

  const ColouredNetwork& network() const { return flow.network(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct FlowReport {
  struct CapacityViolation {
    ArcId arc;
    Value flow = 0;
    Value capacity = 0;
  };
  struct ConservationViolation {
    VertexId vertex;
    Value balance = 0;
  };

  std::vector<CapacityViolation> capacity_violations;
  std::vector<ConservationViolation> conservation_violations;
  // b_x(s) < 0: the flow runs from t to s.
  bool reversed = false;
  Value value = 0;

  bool ok() const {
    return capacity_violations.empty() && conservation_violations.empty() &&
           !reversed;
  }
  std::string describe() const;
};

struct DecompositionReport {
  struct ArcMismatch {
    ArcId arc;
    Value expected = 0;  // x(a)
    Value actual = 0;    // sum of component values through a
  };
  struct ComponentError {
    bool is_cycle = false;
    std::size_t index = 0;
    std::string message;
  };

  std::vector<ArcMismatch> mismatches;
  std::vector<ComponentError> component_errors;
  Value cost = 0;

  bool ok() const { return mismatches.empty() && component_errors.empty(); }
  std::string describe() const;
};

// b_x(v) = x^+(v) - x^-(v).
Value balance(const Flow& flow, VertexId v);

FlowReport validate_flow(const Flow& flow);

// Throws InvalidInput carrying the report text when the flow is invalid.
void require_valid(const Flow& flow);

// Arcs with x >= threshold, capacity reset to x. Vertex set is unchanged;
// kept arcs record their parent arc in `origin`.
ColouredNetwork support(const Flow& flow, Value threshold);

int path_colour_count(const ColouredNetwork& network,
                      std::span<const ArcId> arcs);
int path_colour_count(const ColouredNetwork& network, const PathFlow& path);

Value decomposition_cost(const ColouredNetwork& network,
                         const Decomposition& decomposition);

// Recomputes and stores decomposition.cost.
Decomposition with_cost(const ColouredNetwork& network,
                        Decomposition decomposition);

// Sub-network of the arcs with the given colour.
ColouredNetwork colour_span(const ColouredNetwork& network, Colour colour);

// Checks that every path runs from the flow's source to its sink, every
// cycle is closed and simple, values are positive, and component values sum
// to x on every arc.
DecompositionReport verify_decomposition(const Flow& flow,
                                         const Decomposition& decomposition);

// Vertex sequence visited by a path or cycle (a cycle repeats its first
// vertex at the end). Throws InvalidInput if the arcs are not contiguous.
std::vector<VertexId> walk_vertices(const ColouredNetwork& network,
                                    std::span<const ArcId> arcs);

// Values of `flow` mapped onto the parent network of flow.network() through
// each arc's origin.
std::vector<Value> lift_to_parent(const Flow& flow, int parent_arc_count);

}  // namespace cfd

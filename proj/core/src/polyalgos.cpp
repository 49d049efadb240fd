#include "cfd/polyalgos.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "cfd/decompose.hpp"
#include "cfd/maxflow.hpp"

namespace cfd {

namespace {

void require_clean_terminals(const Flow& flow) {
  if (!has_clean_terminals(flow)) {
    throw InvalidInput(
        "flow enters the source or leaves the sink; this solver needs "
        "clean terminals");
  }
}

void require_values_in(const Flow& flow, std::initializer_list<Value> allowed) {
  for (const Arc& arc : flow.network().arcs()) {
    Value x = flow[arc.id];
    if (x == 0) continue;
    if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) {
      throw InvalidInput("arc " + std::to_string(arc.id.value()) +
                         " carries " + std::to_string(x) +
                         ", outside the allowed flow values");
    }
  }
}

// Network over the arcs accepted by `keep`, capacity `cap(arc)`, with
// origins pointing at the input arcs.
ColouredNetwork restrict_arcs(const Flow& flow,
                              const std::function<bool(const Arc&)>& keep,
                              const std::function<Value(const Arc&)>& cap) {
  const ColouredNetwork& net = flow.network();
  ColouredNetwork::Builder builder(net.vertex_count());
  for (const Arc& arc : net.arcs()) {
    if (keep(arc)) {
      builder.add_arc(arc.tail, arc.head, cap(arc), arc.colour, arc.id);
    }
  }
  return builder.build();
}

struct Extraction {
  std::vector<PathFlow> paths;  // arcs in parent ids, value == unit
  std::vector<Value> lifted;    // per parent arc
  Value count = 0;
};

// Breaks a maximum flow on a derived network into value-`unit` paths on the
// parent network. Cycles in the max flow are dropped, which leaves its
// value unchanged.
Extraction extract_unit_paths(const Flow& derived_flow, Value unit,
                              int parent_arc_count) {
  Extraction out;
  out.lifted.assign(parent_arc_count, 0);
  Decomposition d = flow_decompose(derived_flow);
  const ColouredNetwork& derived = derived_flow.network();
  for (const PathFlow& path : d.paths) {
    if (path.value % unit != 0) {
      throw std::logic_error("path value is not a multiple of the unit");
    }
    std::vector<ArcId> arcs;
    arcs.reserve(path.arcs.size());
    for (ArcId a : path.arcs) {
      ArcId parent = derived.arc(a).origin;
      arcs.push_back(parent);
      out.lifted[parent.index()] += path.value;
    }
    for (Value k = 0; k < path.value / unit; ++k) {
      out.paths.push_back({arcs, unit});
    }
    out.count += path.value / unit;
  }
  return out;
}

std::vector<Value> minus(std::span<const Value> lhs,
                         std::span<const Value> rhs) {
  std::vector<Value> out(lhs.begin(), lhs.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
  return out;
}

void append(Decomposition& into, std::vector<PathFlow> paths) {
  for (PathFlow& p : paths) into.paths.push_back(std::move(p));
}

}  // namespace

bool has_clean_terminals(const Flow& flow) {
  const ColouredNetwork& net = flow.network();
  for (ArcId a : net.in_arcs(flow.source())) {
    if (flow[a] > 0) return false;
  }
  for (ArcId a : net.out_arcs(flow.sink())) {
    if (flow[a] > 0) return false;
  }
  return true;
}

Decomposition decompose_uniform(const Flow& flow, Value lambda) {
  if (lambda < 1) throw InvalidInput("lambda must be positive");
  require_values_in(flow, {lambda});
  Decomposition d = flow_decompose(flow);
  // Every arc carries 0 or lambda, so each extraction zeroes the whole path.
  for (const PathFlow& p : d.paths) {
    if (p.value != lambda) {
      throw std::logic_error("uniform flow produced a path of another value");
    }
  }
  return d;
}

Decomposition decompose_two_values_divisible(const Flow& flow, Value a,
                                             Value b) {
  if (b < 1 || a < b) throw InvalidInput("need a >= b >= 1");
  if (a % b != 0) throw InvalidInput("b must divide a");
  require_values_in(flow, {a, b});
  require_valid(flow);
  require_clean_terminals(flow);
  if (a == b) return decompose_uniform(flow, a);

  const ColouredNetwork& net = flow.network();
  const VertexId s = flow.source();
  const VertexId t = flow.sink();
  const int m = net.arc_count();

  MaxFlowResult large =
      max_flow_value_multiple(support(flow, a), s, t, a);
  Extraction first = extract_unit_paths(large.flow, a, m);

  Flow rest(net, minus(flow.values(), first.lifted), s, t);
  MaxFlowResult small = max_flow_value_multiple(support(rest, b), s, t, b);
  Extraction second = extract_unit_paths(small.flow, b, m);

  Flow leftover(net, minus(rest.values(), second.lifted), s, t);
  Decomposition out;
  append(out, std::move(first.paths));
  append(out, std::move(second.paths));
  out.cycles = flow_decompose(leftover).cycles;
  return with_cost(net, std::move(out));
}

Value TwoValueTrace::total_paths() const {
  return std::accumulate(p.begin(), p.end(), Value{0});
}

TwoValueTrace flow_decomposition_2v(const Flow& flow, Value a, Value b) {
  if (b < 1 || a < b) throw InvalidInput("need a >= b >= 1");
  require_values_in(flow, {a, b});
  require_valid(flow);
  require_clean_terminals(flow);

  const ColouredNetwork& net = flow.network();
  const VertexId s = flow.source();
  const VertexId t = flow.sink();
  const int m = net.arc_count();

  TwoValueTrace trace;
  std::vector<Value> x(flow.values().begin(), flow.values().end());

  auto round = [&](Value threshold) {
    Flow current(net, x, s, t);
    ColouredNetwork rounded = restrict_arcs(
        current, [&](const Arc& arc) { return x[arc.id.index()] >= threshold; },
        [&](const Arc& arc) {
          return x[arc.id.index()] / threshold * threshold;
        });
    MaxFlowResult mf = max_flow_value_multiple(rounded, s, t, threshold);
    Extraction ex = extract_unit_paths(mf.flow, threshold, m);
    trace.p.push_back(ex.count);
    trace.a_sequence.push_back(threshold);
    append(trace.decomposition, std::move(ex.paths));
    x = minus(x, ex.lifted);
    trace.residuals.push_back(x);
  };

  Value current_a = a;
  Value current_b = a == b ? 0 : b;
  while (current_b > 0) {
    round(current_a);
    Value r = current_a % current_b;
    current_a = current_b;
    current_b = r;
  }
  round(current_a);

  Flow leftover(net, x, s, t);
  if (leftover.value() != 0) {
    throw std::logic_error("two-value decomposition left a positive flow");
  }
  trace.decomposition.cycles = flow_decompose(leftover).cycles;
  trace.decomposition = with_cost(net, std::move(trace.decomposition));
  return trace;
}

BichromaticResult mincost_bichromatic_uniform(const Flow& flow,
                                              Value lambda) {
  if (lambda < 1) throw InvalidInput("lambda must be positive");
  require_values_in(flow, {lambda});
  require_valid(flow);
  require_clean_terminals(flow);
  std::vector<Colour> colours = flow.support_colours();
  if (colours.size() > 2) {
    throw InvalidInput("flow support has " + std::to_string(colours.size()) +
                       " colours; at most 2 allowed");
  }

  const ColouredNetwork& net = flow.network();
  const VertexId s = flow.source();
  const VertexId t = flow.sink();
  const int m = net.arc_count();

  BichromaticResult result;
  result.p = flow.value() / lambda;
  std::vector<Value> used(m, 0);
  Decomposition out;
  for (std::size_t i = 0; i < colours.size(); ++i) {
    Colour colour = colours[i];
    ColouredNetwork span = restrict_arcs(
        flow,
        [&](const Arc& arc) {
          return arc.colour == colour && flow[arc.id] > 0;
        },
        [&](const Arc& arc) { return flow[arc.id]; });
    MaxFlowResult mf = max_flow_value_multiple(span, s, t, lambda);
    Extraction ex = extract_unit_paths(mf.flow, lambda, m);
    (i == 0 ? result.colour1 : result.colour2) = colour;
    (i == 0 ? result.p1 : result.p2) = ex.count;
    for (int a = 0; a < m; ++a) used[a] += ex.lifted[a];
    append(out, std::move(ex.paths));
  }

  Flow remainder(net, minus(flow.values(), used), s, t);
  Decomposition mixed = decompose_uniform(remainder, lambda);
  result.p12 = static_cast<Value>(mixed.paths.size());
  if (result.p12 != result.p - result.p1 - result.p2) {
    throw std::logic_error("bichromatic path count mismatch");
  }
  append(out, std::move(mixed.paths));
  out.cycles = std::move(mixed.cycles);
  result.decomposition = with_cost(net, std::move(out));
  result.cost = result.p1 + result.p2 + 2 * result.p12;
  if (result.cost != result.decomposition.cost) {
    throw std::logic_error("bichromatic witness cost differs from formula");
  }
  return result;
}

BichromaticResult mincost_bichromatic_divisible(const Flow& flow, Value v1,
                                                Value v2) {
  if (v2 < 1 || v1 < v2) throw InvalidInput("need v1 >= v2 >= 1");
  if (v1 % v2 != 0) throw InvalidInput("v2 must divide v1");
  if (v1 == v2) return mincost_bichromatic_uniform(flow, v2);
  require_values_in(flow, {v1, v2});
  require_valid(flow);
  require_clean_terminals(flow);

  const ColouredNetwork& net = flow.network();
  const VertexId s = flow.source();
  const VertexId t = flow.sink();
  const int m = net.arc_count();

  Colour c1 = 0;
  Colour c2 = 0;
  for (const Arc& arc : net.arcs()) {
    Value x = flow[arc.id];
    if (x == 0) continue;
    Colour& slot = x == v1 ? c1 : c2;
    if (slot != 0 && slot != arc.colour) {
      throw InvalidInput("flow value " + std::to_string(x) +
                         " appears on more than one colour");
    }
    slot = arc.colour;
  }
  if (c1 != 0 && c1 == c2) {
    throw InvalidInput("both flow values appear on colour " +
                       std::to_string(c1));
  }
  const Value k = v1 / v2;

  // Split every colour-c1 arc into k parallel value-v2 arcs.
  auto expand = [&](std::span<const Value> values) {
    ColouredNetwork::Builder builder(net.vertex_count());
    for (const Arc& arc : net.arcs()) {
      Value x = values[arc.id.index()];
      if (x == 0) continue;
      Value copies = arc.colour == c1 ? x / v2 : 1;
      for (Value i = 0; i < copies; ++i) {
        builder.add_arc(arc.tail, arc.head, v2, arc.colour, arc.id);
      }
    }
    return Flow::saturating(builder.build(), s, t);
  };

  BichromaticResult split = mincost_bichromatic_uniform(expand(flow.values()),
                                                        v2);
  auto count_for = [&](Colour c) -> Value {
    if (c == 0) return 0;
    return split.colour1 == c ? split.p1 : split.p2;
  };
  BichromaticResult result;
  result.colour1 = c1;
  result.colour2 = c2;
  result.p = split.p;
  result.p1 = count_for(c1);
  result.p2 = count_for(c2);
  result.p12 = split.p12;
  result.split_factor = k;
  if (result.p1 % k != 0) {
    throw std::logic_error("split colour-1 path count is not a multiple of k");
  }
  result.cost = result.p1 / k + result.p2 + 2 * result.p12;

  // Witness on the original arcs: monochromatic maximum flows per colour,
  // then the bichromatic rest through the split network.
  Decomposition out;
  std::vector<Value> used(m, 0);
  for (auto [colour, unit, expected] :
       {std::tuple{c1, v1, result.p1 / k}, std::tuple{c2, v2, result.p2}}) {
    if (colour == 0) continue;
    ColouredNetwork span = restrict_arcs(
        flow,
        [&](const Arc& arc) {
          return arc.colour == colour && flow[arc.id] > 0;
        },
        [&](const Arc& arc) { return flow[arc.id]; });
    MaxFlowResult mf = max_flow_value_multiple(span, s, t, unit);
    Extraction ex = extract_unit_paths(mf.flow, unit, m);
    if (ex.count != expected) {
      throw std::logic_error("monochromatic path count differs from split");
    }
    for (int a = 0; a < m; ++a) used[a] += ex.lifted[a];
    append(out, std::move(ex.paths));
  }

  std::vector<Value> rest = minus(flow.values(), used);
  Flow split_rest = expand(rest);
  Decomposition mixed = decompose_uniform(split_rest, v2);
  const ColouredNetwork& split_net = split_rest.network();
  auto project = [&](std::vector<ArcId> arcs) {
    for (ArcId& a : arcs) a = split_net.arc(a).origin;
    return arcs;
  };
  for (PathFlow& p : mixed.paths) {
    out.paths.push_back({project(std::move(p.arcs)), p.value});
  }
  for (CycleFlow& c : mixed.cycles) {
    out.cycles.push_back({project(std::move(c.arcs)), c.value});
  }
  result.decomposition = with_cost(net, std::move(out));
  if (result.decomposition.cost != result.cost) {
    throw std::logic_error("divisible witness cost differs from formula");
  }
  return result;
}

}  // namespace cfd

#include "cfd/decompose.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>

namespace cfd {

namespace {

class Residual {
 public:
  explicit Residual(const Flow& flow)
      : net_(flow.network()),
        values_(flow.values().begin(), flow.values().end()),
        source_(flow.source()),
        sink_(flow.sink()) {}

  Value value() const {
    Value b = 0;
    for (ArcId a : net_.out_arcs(source_)) b += values_[a.index()];
    for (ArcId a : net_.in_arcs(source_)) b -= values_[a.index()];
    return b;
  }

  Value bottleneck(const std::vector<ArcId>& arcs) const {
    Value b = std::numeric_limits<Value>::max();
    for (ArcId a : arcs) b = std::min(b, values_[a.index()]);
    return b;
  }

  void subtract(const std::vector<ArcId>& arcs, Value amount) {
    for (ArcId a : arcs) values_[a.index()] -= amount;
  }

  // Largest B such that an (s,t)-path uses only arcs with residual >= B.
  Value widest() const {
    std::vector<Value> candidates;
    for (Value v : values_) {
      if (v > 0) candidates.push_back(v);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    std::vector<char> blocked(net_.vertex_count(), 0);
    std::size_t lo = 0;
    std::size_t hi = candidates.size();
    // Reachability is monotone in the threshold: find the last index that
    // still connects s to t.
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (reaches(source_, candidates[mid], blocked)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo == 0 ? 0 : candidates[lo - 1];
  }

  // Lexicographically smallest simple (s,t)-path over arcs with residual
  // >= min_value. At each vertex, takes the smallest arc whose head can
  // still reach t without revisiting the path.
  std::optional<std::vector<ArcId>> smallest_path(Value min_value) const {
    std::vector<char> on_path(net_.vertex_count(), 0);
    on_path[source_.index()] = 1;
    if (!reaches(source_, min_value, on_path)) return std::nullopt;
    std::vector<ArcId> path;
    VertexId v = source_;
    while (v != sink_) {
      bool advanced = false;
      for (ArcId a : net_.out_arcs(v)) {
        if (values_[a.index()] < min_value) continue;
        VertexId head = net_.arc(a).head;
        if (on_path[head.index()]) continue;
        on_path[head.index()] = 1;
        if (head == sink_ || reaches(head, min_value, on_path)) {
          path.push_back(a);
          v = head;
          advanced = true;
          break;
        }
        on_path[head.index()] = 0;
      }
      if (!advanced) return std::nullopt;  // unreachable by construction
    }
    return path;
  }

  // Simple cycle through positive arcs, found by walking from the
  // lowest-id positive arc along smallest-id positive out-arcs.
  std::optional<std::vector<ArcId>> some_cycle() const {
    auto first = std::find_if(values_.begin(), values_.end(),
                              [](Value v) { return v > 0; });
    if (first == values_.end()) return std::nullopt;
    ArcId start(static_cast<std::int32_t>(first - values_.begin()));
    std::vector<int> position(net_.vertex_count(), -1);
    std::vector<ArcId> walk{start};
    position[net_.arc(start).tail.index()] = 0;
    VertexId v = net_.arc(start).head;
    while (position[v.index()] < 0) {
      position[v.index()] = static_cast<int>(walk.size());
      std::optional<ArcId> next;
      for (ArcId a : net_.out_arcs(v)) {
        if (values_[a.index()] > 0) {
          next = a;
          break;
        }
      }
      // Conservation guarantees an outgoing positive arc.
      if (!next) return std::nullopt;
      walk.push_back(*next);
      v = net_.arc(*next).head;
    }
    return std::vector<ArcId>(walk.begin() + position[v.index()], walk.end());
  }

 private:
  // BFS from `from` to the sink over arcs with residual >= min_value,
  // never entering a blocked vertex.
  bool reaches(VertexId from, Value min_value,
               const std::vector<char>& blocked) const {
    if (from == sink_) return true;
    std::vector<char> seen = blocked;
    seen[from.index()] = 1;
    std::queue<VertexId> frontier;
    frontier.push(from);
    while (!frontier.empty()) {
      VertexId v = frontier.front();
      frontier.pop();
      for (ArcId a : net_.out_arcs(v)) {
        if (values_[a.index()] < min_value) continue;
        VertexId head = net_.arc(a).head;
        if (head == sink_) return true;
        if (seen[head.index()]) continue;
        seen[head.index()] = 1;
        frontier.push(head);
      }
    }
    return false;
  }

  ColouredNetwork net_;
  std::vector<Value> values_;
  VertexId source_;
  VertexId sink_;
};

void split_circulation(Residual& residual, Decomposition& out) {
  while (auto cycle = residual.some_cycle()) {
    Value value = residual.bottleneck(*cycle);
    residual.subtract(*cycle, value);
    out.cycles.push_back({std::move(*cycle), value});
  }
}

}  // namespace

Decomposition flow_decompose(const Flow& flow) {
  require_valid(flow);
  Residual residual(flow);
  Decomposition out;
  while (residual.value() > 0) {
    auto path = residual.smallest_path(1);
    if (!path) break;
    // With inflow into s a path may carry more than the remaining value;
    // the excess belongs to a cycle through s.
    Value value = std::min(residual.bottleneck(*path), residual.value());
    residual.subtract(*path, value);
    out.paths.push_back({std::move(*path), value});
  }
  split_circulation(residual, out);
  return with_cost(flow.network(), std::move(out));
}

Decomposition greedy_max_value_decompose(const Flow& flow) {
  require_valid(flow);
  Residual residual(flow);
  Decomposition out;
  while (residual.value() > 0) {
    Value widest = residual.widest();
    auto path = residual.smallest_path(widest);
    if (widest <= 0 || !path) break;
    Value value = std::min(widest, residual.value());
    residual.subtract(*path, value);
    out.paths.push_back({std::move(*path), value});
  }
  split_circulation(residual, out);
  return with_cost(flow.network(), std::move(out));
}

Flow without_circulation(const Flow& flow) {
  Decomposition d = flow_decompose(flow);
  std::vector<Value> values(flow.network().arc_count(), 0);
  for (const PathFlow& p : d.paths) {
    for (ArcId a : p.arcs) values[a.index()] += p.value;
  }
  return Flow(flow.network(), std::move(values), flow.source(), flow.sink());
}

}  // namespace cfd

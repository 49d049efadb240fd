#include "cfd/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "cfd/polyalgos.hpp"

namespace cfd {

namespace {

VertexId vid(int v) { return VertexId(v); }
ArcId aid(int a) { return ArcId(a); }

GeneratedInstance finish(Flow flow, Value threshold, CostMode objective,
                         std::optional<Decomposition> witness,
                         std::string provenance) {
  if (witness) {
    *witness = with_cost(flow.network(), std::move(*witness));
    DecompositionReport report = verify_decomposition(flow, *witness);
    if (!report.ok()) {
      throw std::logic_error("generated witness is invalid: " +
                             report.describe());
    }
    if (decomposition_objective(flow.network(), *witness, objective) >
        threshold) {
      throw std::logic_error("generated witness misses its threshold");
    }
  }
  GeneratedInstance out{Instance{std::move(flow), threshold},
                        Certificate{threshold, objective, std::move(witness)},
                        std::move(provenance)};
  return out;
}

// Assigns each item to one of r bins of exactly three items summing to
// target. Returns the bin per item.
std::optional<std::vector<int>> find_3partition(std::span<const Value> values,
                                                Value target) {
  const int items = static_cast<int>(values.size());
  const int bins = items / 3;
  std::vector<int> bin_of(items, -1);
  std::vector<Value> load(bins, 0);
  std::vector<int> count(bins, 0);
  std::function<bool(int)> place = [&](int i) {
    if (i == items) return true;
    for (int b = 0; b < bins; ++b) {
      bool duplicate = false;
      for (int c = 0; c < b; ++c) {
        if (load[c] == load[b] && count[c] == count[b]) duplicate = true;
      }
      if (duplicate || count[b] == 3 || load[b] + values[i] > target) {
        continue;
      }
      load[b] += values[i];
      ++count[b];
      bin_of[i] = b;
      if (place(i + 1)) return true;
      load[b] -= values[i];
      --count[b];
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return bin_of;
}

// Simple u1 -> v1 path and u2 -> v2 path sharing no arc, as arc indices.
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_linkage(
    const LinkageQuery& q) {
  const Digraph& g = q.graph;
  const int m = static_cast<int>(g.arcs.size());
  std::vector<std::vector<int>> out(g.vertex_count);
  for (int a = 0; a < m; ++a) out[g.arcs[a].first].push_back(a);

  auto second_path = [&](const std::vector<char>& used)
      -> std::optional<std::vector<int>> {
    std::vector<int> via(g.vertex_count, -1);
    std::vector<char> seen(g.vertex_count, 0);
    std::vector<int> queue{q.u2};
    seen[q.u2] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (int a : out[v]) {
        int head = g.arcs[a].second;
        if (used[a] || seen[head]) continue;
        seen[head] = 1;
        via[head] = a;
        queue.push_back(head);
      }
    }
    if (!seen[q.v2]) return std::nullopt;
    std::vector<int> path;
    for (int v = q.v2; v != q.u2; v = g.arcs[via[v]].first) {
      path.push_back(via[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::vector<char> used(m, 0);
  std::vector<char> visited(g.vertex_count, 0);
  std::vector<int> first;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> found;
  std::function<void(int)> dfs = [&](int v) {
    if (found) return;
    if (v == q.v1) {
      if (auto second = second_path(used)) found = {{first, *second}};
      return;
    }
    for (int a : out[v]) {
      int head = g.arcs[a].second;
      if (visited[head]) continue;
      visited[head] = 1;
      used[a] = 1;
      first.push_back(a);
      dfs(head);
      first.pop_back();
      used[a] = 0;
      visited[head] = 0;
      if (found) return;
    }
  };
  visited[q.u1] = 1;
  dfs(q.u1);
  return found;
}

bool one_in_three(const Formula& f, std::uint64_t assignment) {
  for (const Clause& clause : f.clauses) {
    int true_literals = 0;
    for (const Literal& l : clause) {
      bool value = (assignment >> l.variable) & 1;
      if (value != l.negated) ++true_literals;
    }
    if (true_literals != 1) return false;
  }
  return true;
}

struct Named {
  std::vector<std::string> vertices;
  ColouredNetwork::Builder builder;

  explicit Named(std::vector<std::string> names)
      : vertices(std::move(names)),
        builder(static_cast<int>(vertices.size())) {}

  VertexId at(std::string_view name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    return vid(static_cast<int>(it - vertices.begin()));
  }

  void arc(std::string_view tail, std::string_view head, Value value,
           Colour colour) {
    builder.add_arc(at(tail), at(head), value, colour);
  }

  Instance saturated() const {
    return Instance{Flow::saturating(builder.build(), at("s"), at("t")),
                    std::nullopt};
  }
};

Instance recoloured_greedy_gap() {
  Flow base = greedy_gap_flow(3);
  ColouredNetwork::Builder builder(base.network().vertex_count());
  const int chain = 7;
  for (const Arc& arc : base.network().arcs()) {
    builder.add_arc(arc.tail, arc.head, arc.capacity,
                    arc.id.value() < chain ? 1 : 2);
  }
  return Instance{Flow::saturating(builder.build(), base.source(), base.sink()),
                  std::nullopt};
}

}  // namespace

GeneratedInstance gen_3partition(std::span<const Value> values, Value target) {
  if (target < 1) throw InvalidInput("T must be positive");
  if (values.empty() || values.size() % 3 != 0) {
    throw InvalidInput("3-Partition needs 3r values, got " +
                       std::to_string(values.size()));
  }
  const int r = static_cast<int>(values.size() / 3);
  Value sum = 0;
  for (Value v : values) {
    if (!(4 * v > target && 2 * v < target)) {
      throw InvalidInput("value " + std::to_string(v) +
                         " is not strictly between T/4 and T/2");
    }
    sum += v;
  }
  if (sum != r * target) {
    throw InvalidInput("values sum to " + std::to_string(sum) + ", not rT = " +
                       std::to_string(r * target));
  }

  const int q = 3 * r + 1;
  const int t = 4 * r + 2;
  ColouredNetwork::Builder builder(4 * r + 3);
  for (int i = 0; i < 3 * r; ++i) {
    builder.add_arc(vid(0), vid(i + 1), values[i], r + 1);
    builder.add_arc(vid(i + 1), vid(q), values[i], r + 1);
  }
  for (int j = 0; j < r; ++j) {
    builder.add_arc(vid(q), vid(q + 1 + j), target, j + 1);
    builder.add_arc(vid(q + 1 + j), vid(t), target, j + 1);
  }
  Flow flow = Flow::saturating(builder.build(), vid(0), vid(t));

  std::optional<Decomposition> witness;
  if (auto bins = find_3partition(values, target)) {
    witness.emplace();
    for (int i = 0; i < 3 * r; ++i) {
      int j = (*bins)[i];
      witness->paths.push_back(
          {{aid(2 * i), aid(2 * i + 1), aid(6 * r + 2 * j),
            aid(6 * r + 2 * j + 1)},
           values[i]});
    }
  }
  return finish(std::move(flow), 6 * r, CostMode::kColours, std::move(witness),
                "3-partition r=" + std::to_string(r) +
                    " T=" + std::to_string(target));
}

GeneratedInstance gen_from_splittable(
    const Flow& base, int q, Value k,
    const std::optional<Decomposition>& base_witness) {
  if (q < 2) throw InvalidInput("q must be at least 2");
  if (k < 0) throw InvalidInput("k must be nonnegative");
  require_valid(base);
  const ColouredNetwork& net = base.network();
  for (const Arc& arc : net.arcs()) {
    Value x = base[arc.id];
    if (x != 0 && x != 1 && x != 2 && x != 4) {
      throw InvalidInput("base arc " + std::to_string(arc.id.value()) +
                         " carries " + std::to_string(x) +
                         "; values must be in {1, 2, 4}");
    }
    if (arc.colour != net.arcs().front().colour) {
      throw InvalidInput("base network must be monochromatic");
    }
  }

  ColouredNetwork::Builder builder(net.vertex_count());
  for (const Arc& arc : net.arcs()) {
    builder.add_arc(arc.tail, arc.head, base[arc.id], 1);
  }
  std::vector<ArcId> detour_arcs;
  for (int i = 2; i <= q; ++i) {
    VertexId z = builder.add_vertex();
    detour_arcs.push_back(builder.add_arc(base.source(), z, 1, i));
    detour_arcs.push_back(builder.add_arc(z, base.sink(), 1, i));
  }
  Flow flow = Flow::saturating(builder.build(), base.source(), base.sink());

  std::optional<Decomposition> witness;
  if (base_witness) {
    DecompositionReport report = verify_decomposition(base, *base_witness);
    if (!report.ok()) {
      throw InvalidInput("base witness is invalid: " + report.describe());
    }
    if (static_cast<Value>(base_witness->paths.size()) > k) {
      throw InvalidInput("base witness uses more than k paths");
    }
    witness = *base_witness;
    for (std::size_t i = 0; i < detour_arcs.size(); i += 2) {
      witness->paths.push_back({{detour_arcs[i], detour_arcs[i + 1]}, 1});
    }
  }
  return finish(std::move(flow), k + q - 1, CostMode::kColours,
                std::move(witness),
                "splittable q=" + std::to_string(q) +
                    " k=" + std::to_string(k));
}

GeneratedInstance gen_weak2linkage(const LinkageQuery& query,
                                   const LinkageOptions& options) {
  const Digraph& g = query.graph;
  const int n = g.vertex_count;
  const int m = static_cast<int>(g.arcs.size());
  if (n < 4) throw InvalidInput("weak 2-linkage base needs n >= 4");
  if (m < 2) throw InvalidInput("weak 2-linkage base needs m >= 2");
  if (options.lambda < 1) throw InvalidInput("lambda must be positive");
  std::array<int, 4> terminals{query.u1, query.u2, query.v1, query.v2};
  for (int v : terminals) {
    if (v < 0 || v >= n) throw InvalidInput("terminal out of range");
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (terminals[i] == terminals[j]) {
        throw InvalidInput("terminals u1, u2, v1, v2 must be distinct");
      }
    }
  }
  std::vector<int> out_degree(n, 0);
  std::vector<int> in_degree(n, 0);
  for (auto [tail, head] : g.arcs) {
    if (tail < 0 || tail >= n || head < 0 || head >= n || tail == head) {
      throw InvalidInput("base arc endpoints invalid");
    }
    ++out_degree[tail];
    ++in_degree[head];
  }
  if (out_degree[query.u1] == 0 || out_degree[query.u2] == 0 ||
      in_degree[query.v1] == 0 || in_degree[query.v2] == 0) {
    throw InvalidInput(
        "u1, u2 need an outgoing and v1, v2 an incoming base arc");
  }

  const Value lambda = options.lambda;
  const int bundles = m - 2;
  const int vertices = options.degree_bounded ? n + 2 + 4 * bundles : n + 6;
  const VertexId s = vid(n);
  const VertexId t = vid(n + 1);
  auto s1 = [&](int i) { return vid(options.degree_bounded ? n + 2 + 4 * i : n + 2); };
  auto s2 = [&](int i) { return vid(options.degree_bounded ? n + 3 + 4 * i : n + 3); };
  auto t1 = [&](int i) { return vid(options.degree_bounded ? n + 4 + 4 * i : n + 4); };
  auto t2 = [&](int i) { return vid(options.degree_bounded ? n + 5 + 4 * i : n + 5); };

  ColouredNetwork::Builder builder(vertices);
  for (auto [tail, head] : g.arcs) {
    builder.add_arc(vid(tail), vid(head), lambda, 3);
  }
  const ArcId to_u1 = builder.add_arc(s, vid(query.u1), lambda, 1);
  const ArcId to_u2 = builder.add_arc(s, vid(query.u2), lambda, 2);
  const ArcId from_v1 = builder.add_arc(vid(query.v1), t, lambda, 1);
  const ArcId from_v2 = builder.add_arc(vid(query.v2), t, lambda, 2);
  if (options.degree_bounded) {
    for (int i = 0; i < bundles; ++i) {
      builder.add_arc(s, s1(i), lambda, 1);
      builder.add_arc(s1(i), s2(i), lambda, 3);
      builder.add_arc(t1(i), t2(i), lambda, 3);
      builder.add_arc(t2(i), t, lambda, 2);
    }
  } else {
    for (int i = 0; i < bundles; ++i) builder.add_arc(s, s1(0), lambda, 1);
    for (int i = 0; i < bundles; ++i) builder.add_arc(s1(0), s2(0), lambda, 3);
    for (int i = 0; i < bundles; ++i) builder.add_arc(t1(0), t2(0), lambda, 3);
    for (int i = 0; i < bundles; ++i) builder.add_arc(t2(0), t, lambda, 2);
  }
  int copy = 0;
  for (int v = 0; v < n; ++v) {
    int extra = out_degree[v] - (v == query.u1 || v == query.u2 ? 1 : 0);
    for (int i = 0; i < extra; ++i) {
      builder.add_arc(s2(copy++), vid(v), lambda, 2);
    }
  }
  copy = 0;
  for (int v = 0; v < n; ++v) {
    int extra = in_degree[v] - (v == query.v1 || v == query.v2 ? 1 : 0);
    for (int i = 0; i < extra; ++i) {
      builder.add_arc(vid(v), t1(copy++), lambda, 1);
    }
  }
  Flow flow = Flow::saturating(builder.build(), s, t);

  std::optional<Decomposition> witness;
  if (auto linkage = find_linkage(query)) {
    witness.emplace();
    std::vector<Value> rest(flow.values().begin(), flow.values().end());
    auto add = [&](ArcId first, const std::vector<int>& base, ArcId last) {
      std::vector<ArcId> arcs{first};
      for (int a : base) arcs.push_back(aid(a));
      arcs.push_back(last);
      for (ArcId a : arcs) rest[a.index()] -= lambda;
      witness->paths.push_back({std::move(arcs), lambda});
    };
    add(to_u1, linkage->first, from_v1);
    add(to_u2, linkage->second, from_v2);
    Decomposition others =
        decompose_uniform(Flow(flow.network(), std::move(rest), s, t), lambda);
    for (PathFlow& p : others.paths) witness->paths.push_back(std::move(p));
    witness->cycles = std::move(others.cycles);
  }
  return finish(std::move(flow), 3 * Value{m} - 2, CostMode::kColours,
                std::move(witness),
                "weak-2-linkage n=" + std::to_string(n) +
                    " m=" + std::to_string(m) +
                    (options.degree_bounded ? " degree-bounded" : ""));
}

GeneratedInstance gen_1in3sat(const Formula& formula, Value lambda) {
  const int n = formula.variable_count;
  const int m = static_cast<int>(formula.clauses.size());
  if (n < 3) throw InvalidInput("1-in-3SAT needs at least 3 variables");
  if (lambda < 1) throw InvalidInput("lambda must be positive");
  for (int j = 0; j < m; ++j) {
    const Clause& clause = formula.clauses[j];
    for (int i = 0; i < 3; ++i) {
      if (clause[i].variable < 0 || clause[i].variable >= n) {
        throw InvalidInput("clause " + std::to_string(j + 1) +
                           " names an unknown variable");
      }
      for (int k = 0; k < i; ++k) {
        if (clause[k].variable == clause[i].variable) {
          throw InvalidInput("clause " + std::to_string(j + 1) +
                             " repeats a variable");
        }
      }
    }
  }

  const VertexId s = vid(0);
  const VertexId t = vid(n + 2 * m + 1);
  auto var = [](int i) { return vid(1 + i); };
  auto cs = [n](int j) { return vid(n + 1 + 2 * j); };
  auto ct = [n](int j) { return vid(n + 2 + 2 * j); };

  ColouredNetwork::Builder builder(n + 2 * m + 2);
  for (int i = 0; i < n; ++i) {
    builder.add_arc(s, var(i), lambda, 1);
    builder.add_arc(s, var(i), lambda, 2);
  }
  for (int j = 0; j < m; ++j) {
    builder.add_arc(cs(j), ct(j), lambda, 1);
    builder.add_arc(cs(j), ct(j), lambda, 2);
    builder.add_arc(cs(j), ct(j), lambda, 2);
  }
  // chain[i][negated]: (clause index or -1 for the final hop, arc id).
  std::vector<std::array<std::vector<std::pair<int, ArcId>>, 2>> chain(n);
  for (int i = 0; i < n; ++i) {
    for (int negated = 0; negated < 2; ++negated) {
      std::vector<int> clauses;
      for (int j = 0; j < m; ++j) {
        for (const Literal& l : formula.clauses[j]) {
          if (l.variable == i && l.negated == (negated == 1)) {
            clauses.push_back(j);
          }
        }
      }
      auto& hops = chain[i][negated];
      VertexId from = var(i);
      for (int j : clauses) {
        hops.push_back({j, builder.add_arc(from, cs(j), lambda, i + 3)});
        from = ct(j);
      }
      hops.push_back({-1, builder.add_arc(from, t, lambda, i + 3)});
    }
  }
  Flow flow = Flow::saturating(builder.build(), s, t);

  std::optional<Decomposition> witness;
  if (n <= 24) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      if (!one_in_three(formula, a)) continue;
      witness.emplace();
      std::vector<int> colour2_used(m, 0);
      for (int i = 0; i < n; ++i) {
        bool value = (a >> i) & 1;
        // The true literal rides the colour-1 gadget arcs.
        for (int gadget_colour = 1; gadget_colour <= 2; ++gadget_colour) {
          int negated = (gadget_colour == 1) == value ? 0 : 1;
          std::vector<ArcId> arcs{aid(2 * i + gadget_colour - 1)};
          for (auto [j, arc] : chain[i][negated]) {
            arcs.push_back(arc);
            if (j < 0) continue;
            int offset = gadget_colour == 1 ? 0 : 1 + colour2_used[j]++;
            arcs.push_back(aid(2 * n + 3 * j + offset));
          }
          witness->paths.push_back({std::move(arcs), lambda});
        }
      }
      break;
    }
  }
  return finish(std::move(flow), 4 * Value{n}, CostMode::kColours,
                std::move(witness),
                "1-in-3sat n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
}

Flow greedy_gap_flow(int n) {
  if (n < 1) throw InvalidInput("greedy-gap family needs n >= 1");
  const VertexId s = vid(0);
  const VertexId t = vid(2 * n + 1);
  ColouredNetwork::Builder builder(2 * n + 2);
  for (int j = 0; j <= 2 * n; ++j) builder.add_arc(vid(j), vid(j + 1), 4, 1);
  for (int i = 1; i <= n; ++i) builder.add_arc(s, vid(2 * i - 1), 2, 1);
  for (int i = 1; i <= n; ++i) builder.add_arc(vid(2 * i), t, 2, 1);
  for (int i = 1; i <= n; ++i) {
    builder.add_arc(vid(2 * i - 1), vid(2 * i), 1, 1);
    builder.add_arc(vid(2 * i - 1), vid(2 * i), 1, 1);
  }
  return Flow::saturating(builder.build(), s, t);
}

GeneratedInstance gen_greedy_gap(int n) {
  if (n < 3) {
    throw InvalidInput(
        "greedy-gap certificate needs n >= 3; below that greedy is optimal");
  }
  Flow flow = greedy_gap_flow(n);
  auto chain = [](int j) { return aid(j); };
  auto from_s = [n](int i) { return aid(2 * n + i); };
  auto to_t = [n](int i) { return aid(3 * n + i); };
  auto unit = [n](int i, int b) { return aid(4 * n + 1 + 2 * (i - 1) + b); };

  Decomposition witness;
  witness.paths.push_back({{chain(0), chain(1), to_t(1)}, 2});
  for (int i = 1; i < n; ++i) {
    witness.paths.push_back({{from_s(i), chain(2 * i - 1), chain(2 * i),
                              chain(2 * i + 1), to_t(i + 1)},
                             2});
  }
  witness.paths.push_back({{from_s(n), chain(2 * n - 1), chain(2 * n)}, 2});
  for (int b = 0; b < 2; ++b) {
    std::vector<ArcId> arcs{chain(0)};
    for (int i = 1; i <= n; ++i) {
      arcs.push_back(unit(i, b));
      arcs.push_back(chain(2 * i));
    }
    witness.paths.push_back({std::move(arcs), 1});
  }
  return finish(std::move(flow), n + 3, CostMode::kPaths, std::move(witness),
                "greedy-gap n=" + std::to_string(n));
}

Instance fixture(std::string_view name) {
  if (name == "fig1") {
    Named f({"s", "a", "b", "c", "d", "t"});
    f.arc("s", "a", 1, 1);
    f.arc("s", "c", 1, 2);
    f.arc("a", "b", 1, 1);
    f.arc("a", "t", 1, 2);
    f.arc("b", "c", 1, 1);
    f.arc("c", "d", 1, 2);
    f.arc("c", "t", 1, 1);
    f.arc("d", "a", 1, 2);
    return f.saturated();
  }
  if (name == "fig3") {
    Named f({"s", "a", "t"});
    for (int i = 0; i < 5; ++i) f.arc("s", "a", 7, 1);
    for (int i = 0; i < 7; ++i) f.arc("a", "t", 5, 1);
    return f.saturated();
  }
  if (name == "fig4") {
    return Instance{greedy_gap_flow(3), std::nullopt};
  }
  if (name == "fig5") {
    Named f({"s", "a", "b", "c", "d", "e", "f", "t"});
    f.arc("s", "c", 2, 2);
    f.arc("s", "d", 2, 1);
    f.arc("c", "d", 2, 2);
    f.arc("c", "t", 2, 1);
    f.arc("d", "t", 2, 2);
    f.arc("s", "a", 1, 2);
    f.arc("s", "b", 1, 2);
    f.arc("a", "c", 1, 2);
    f.arc("b", "c", 1, 2);
    f.arc("d", "e", 1, 2);
    f.arc("d", "f", 1, 2);
    f.arc("e", "t", 1, 2);
    f.arc("f", "t", 1, 2);
    return f.saturated();
  }
  if (name == "fig6") return recoloured_greedy_gap();
  if (name == "fig8") {
    Named f({"s", "a", "b", "c", "d", "e", "f", "g", "h", "t"});
    f.arc("s", "a", 1, 3);
    f.arc("s", "b", 1, 1);
    f.arc("a", "c", 1, 2);
    f.arc("b", "c", 1, 2);
    f.arc("c", "d", 1, 3);
    f.arc("c", "e", 1, 2);
    f.arc("d", "f", 1, 3);
    f.arc("e", "f", 1, 2);
    f.arc("f", "g", 1, 2);
    f.arc("f", "h", 1, 1);
    f.arc("g", "t", 1, 2);
    f.arc("h", "t", 1, 1);
    return f.saturated();
  }
  throw InvalidInput("unknown fixture '" + std::string(name) +
                     "'; expected one of fig1, fig3, fig4, fig5, fig6, fig8");
}

std::vector<std::string> fixture_names() {
  return {"fig1", "fig3", "fig4", "fig5", "fig6", "fig8"};
}

}  // namespace cfd

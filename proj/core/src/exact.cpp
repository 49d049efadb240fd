#include "cfd/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

#include "cfd/decompose.hpp"

namespace cfd {

namespace {

using Mask = std::uint64_t;

constexpr Value kInfinity = std::numeric_limits<Value>::max() / 4;

struct Context {
  ColouredNetwork net;
  VertexId s;
  VertexId t;
  std::vector<Mask> bit;  // per arc, its colour's bit
  // Arcs with equal tail, head and colour; lowest id first.
  std::vector<std::vector<ArcId>> classes;
  std::vector<int> class_of;
};

Context make_context(const Flow& flow) {
  Context ctx{flow.network(), flow.source(), flow.sink(), {}, {}, {}};
  std::vector<Colour> colours = flow.support_colours();
  if (colours.size() > 64) {
    throw InvalidInput("exact search supports at most 64 colours, got " +
                       std::to_string(colours.size()));
  }
  const int m = ctx.net.arc_count();
  ctx.bit.assign(m, 0);
  ctx.class_of.assign(m, -1);
  std::vector<std::pair<std::tuple<int, int, Colour>, int>> seen;
  for (const Arc& arc : ctx.net.arcs()) {
    auto it = std::lower_bound(colours.begin(), colours.end(), arc.colour);
    if (it != colours.end() && *it == arc.colour) {
      ctx.bit[arc.id.index()] = Mask{1} << (it - colours.begin());
    }
    std::tuple<int, int, Colour> key{arc.tail.value(), arc.head.value(),
                                     arc.colour};
    auto found = std::find_if(seen.begin(), seen.end(),
                              [&](const auto& e) { return e.first == key; });
    int cls;
    if (found == seen.end()) {
      cls = static_cast<int>(ctx.classes.size());
      seen.push_back({key, cls});
      ctx.classes.emplace_back();
    } else {
      cls = found->second;
    }
    ctx.classes[cls].push_back(arc.id);
    ctx.class_of[arc.id.index()] = cls;
  }
  return ctx;
}

Value net_value(const Context& ctx, std::span<const Value> x) {
  Value b = 0;
  for (ArcId a : ctx.net.out_arcs(ctx.s)) b += x[a.index()];
  for (ArcId a : ctx.net.in_arcs(ctx.s)) b -= x[a.index()];
  return b;
}

bool positive_into(const Context& ctx, std::span<const Value> x, VertexId v) {
  for (ArcId a : ctx.net.in_arcs(v)) {
    if (x[a.index()] > 0) return true;
  }
  return false;
}

bool positive_out_of(const Context& ctx, std::span<const Value> x,
                     VertexId v) {
  for (ArcId a : ctx.net.out_arcs(v)) {
    if (x[a.index()] > 0) return true;
  }
  return false;
}

// Maximum bottleneck over walks of positive arcs ending at the sink
// (toward_sink) or starting at the source.
std::vector<Value> widest(const Context& ctx, std::span<const Value> x,
                          bool toward_sink) {
  const int n = ctx.net.vertex_count();
  std::vector<Value> label(n, 0);
  std::vector<char> done(n, 0);
  label[(toward_sink ? ctx.t : ctx.s).index()] = kInfinity;
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && label[v] > 0 && (pick < 0 || label[v] > label[pick])) {
        pick = v;
      }
    }
    if (pick < 0) break;
    done[pick] = 1;
    VertexId v(pick);
    auto arcs = toward_sink ? ctx.net.in_arcs(v) : ctx.net.out_arcs(v);
    for (ArcId a : arcs) {
      Value xa = x[a.index()];
      if (xa <= 0) continue;
      const Arc& arc = ctx.net.arc(a);
      VertexId other = toward_sink ? arc.tail : arc.head;
      Value candidate = std::min(label[pick], xa);
      if (candidate > label[other.index()]) label[other.index()] = candidate;
    }
  }
  return label;
}

// Vertices that reach the sink (or are reached from the source) through
// positive arcs whose colour lies in a given mask. Cached per mask.
class ColourReach {
 public:
  ColourReach(const Context& ctx, std::span<const Value> x, bool toward_sink)
      : ctx_(ctx), x_(x), toward_sink_(toward_sink) {}

  const std::vector<char>& get(Mask allowed) {
    for (const auto& [mask, reach] : cache_) {
      if (mask == allowed) return reach;
    }
    const int n = ctx_.net.vertex_count();
    std::vector<char> reach(n, 0);
    VertexId root = toward_sink_ ? ctx_.t : ctx_.s;
    std::vector<VertexId> stack{root};
    reach[root.index()] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      auto arcs = toward_sink_ ? ctx_.net.in_arcs(v) : ctx_.net.out_arcs(v);
      for (ArcId a : arcs) {
        if (x_[a.index()] <= 0 || !(ctx_.bit[a.index()] & allowed)) continue;
        const Arc& arc = ctx_.net.arc(a);
        VertexId other = toward_sink_ ? arc.tail : arc.head;
        if (reach[other.index()]) continue;
        reach[other.index()] = 1;
        stack.push_back(other);
      }
    }
    cache_.emplace_back(allowed, std::move(reach));
    return cache_.back().second;
  }

 private:
  const Context& ctx_;
  std::span<const Value> x_;
  bool toward_sink_;
  std::vector<std::pair<Mask, std::vector<char>>> cache_;
};

// Fewest colours on a walk from v to the terminal, given that the walk
// must also contain colour `own` (0 for none). Capped at 3.
Value fewest_colours(ColourReach& reach, Mask present, Mask own, VertexId v) {
  if (own != 0 && reach.get(own)[v.index()]) return 1;
  for (Mask rest = present; rest != 0; rest &= rest - 1) {
    Mask c = rest & -rest;
    if (own == 0 && reach.get(c)[v.index()]) return 1;
  }
  for (Mask rest = present; rest != 0; rest &= rest - 1) {
    Mask c = rest & -rest;
    if (own != 0) {
      if (c != own && reach.get(own | c)[v.index()]) return 2;
      continue;
    }
    for (Mask other = rest & (rest - 1); other != 0; other &= other - 1) {
      if (reach.get(c | (other & -other))[v.index()]) return 2;
    }
  }
  return 3;
}

Value ceil_div(Value a, Value b) { return (a + b - 1) / b; }

struct Bounds {
  Value cost = 0;   // under the requested mode
  Value paths = 0;  // minimum path count
};

Bounds compute_bounds(const Context& ctx, std::span<const Value> x,
                      CostMode mode) {
  Value value = net_value(ctx, x);
  if (value <= 0) return {};
  const bool colours = mode == CostMode::kColours;
  Mask present = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] > 0) present |= ctx.bit[a];
  }

  std::vector<Value> to_sink = widest(ctx, x, true);
  Value global_width = std::max<Value>(to_sink[ctx.s.index()], 1);
  Bounds out;
  out.paths = ceil_div(value, global_width);
  out.cost = out.paths;

  const bool clean_source = !positive_into(ctx, x, ctx.s);
  const bool clean_sink = !positive_out_of(ctx, x, ctx.t);
  if (colours && !clean_source && !clean_sink) {
    ColourReach reach(ctx, x, true);
    out.cost = out.paths * fewest_colours(reach, present, 0, ctx.s);
  }

  if (clean_source) {
    ColourReach reach(ctx, x, true);
    Value paths = 0;
    Value cost = 0;
    for (ArcId a : ctx.net.out_arcs(ctx.s)) {
      Value xa = x[a.index()];
      if (xa <= 0) continue;
      VertexId head = ctx.net.arc(a).head;
      Value count = ceil_div(xa, std::min(xa, to_sink[head.index()]));
      paths += count;
      if (colours) {
        cost += count * (head == ctx.t ? 1
                                       : fewest_colours(reach, present,
                                                        ctx.bit[a.index()],
                                                        head));
      }
    }
    out.paths = std::max(out.paths, paths);
    out.cost = std::max(out.cost, colours ? cost : paths);
  }
  if (clean_sink) {
    std::vector<Value> from_source = widest(ctx, x, false);
    ColourReach reach(ctx, x, false);
    Value paths = 0;
    Value cost = 0;
    for (ArcId a : ctx.net.in_arcs(ctx.t)) {
      Value xa = x[a.index()];
      if (xa <= 0) continue;
      VertexId tail = ctx.net.arc(a).tail;
      Value count = ceil_div(xa, std::min(xa, from_source[tail.index()]));
      paths += count;
      if (colours) {
        cost += count * (tail == ctx.s ? 1
                                       : fewest_colours(reach, present,
                                                        ctx.bit[a.index()],
                                                        tail));
      }
    }
    out.paths = std::max(out.paths, paths);
    out.cost = std::max(out.cost, colours ? cost : paths);
  }
  if (!colours) out.cost = out.paths;
  return out;
}

class Search {
 public:
  Search(const Flow& flow, const ExactOptions& options)
      : ctx_(make_context(flow)),
        options_(options),
        x_(flow.values().begin(), flow.values().end()) {}

  // Only decompositions with objective < bound are looked for.
  void set_bound(Value bound) { best_ = bound; }
  void set_incumbent(Decomposition d, Value objective) {
    best_ = objective;
    witness_ = std::move(d);
  }
  void stop_at_first() { stop_at_first_ = true; }

  void run() {
    Bounds root = compute_bounds(ctx_, x_, options_.cost_mode);
    if (!admissible(0, 0, root)) return;
    search(0, 0);
  }

  bool aborted() const { return aborted_; }
  std::int64_t nodes() const { return nodes_; }
  Value best() const { return best_; }
  const std::optional<Decomposition>& witness() const { return witness_; }

 private:
  struct Child {
    std::vector<ArcId> arcs;
    bool cycle = false;
    Value value = 0;
    Value step_cost = 0;
    Value f = 0;
  };

  bool admissible(Value g, int paths_used, const Bounds& h) const {
    if (g + h.cost >= best_) return false;
    if (options_.path_limit && paths_used + h.paths > *options_.path_limit) {
      return false;
    }
    return true;
  }

  Value path_cost(Mask colours) const {
    return options_.cost_mode == CostMode::kColours ? std::popcount(colours)
                                                    : 1;
  }

  // Among interchangeable parallel arcs with equal residual, only the
  // lowest id is tried.
  bool representative(ArcId a) const {
    for (ArcId other : ctx_.classes[ctx_.class_of[a.index()]]) {
      if (other == a) return true;
      if (x_[other.index()] == x_[a.index()]) return false;
    }
    return true;
  }

  std::string memo_key(int paths_used) const {
    std::string key;
    std::vector<Value> group;
    auto put = [&key](std::uint64_t v) {
      while (v >= 0x80) {
        key.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
      }
      key.push_back(static_cast<char>(v));
    };
    for (const auto& cls : ctx_.classes) {
      group.clear();
      for (ArcId a : cls) group.push_back(x_[a.index()]);
      std::sort(group.begin(), group.end());
      for (Value v : group) put(static_cast<std::uint64_t>(v));
    }
    if (options_.path_limit) put(static_cast<std::uint64_t>(paths_used));
    return key;
  }

  // Returns true when the state was already explored with cost <= g.
  bool seen_cheaper(Value g, int paths_used) {
    if (options_.memo_cap == 0) return false;
    std::string key = memo_key(paths_used);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second <= g) return true;
      it->second = g;
      return false;
    }
    if (memo_.size() < options_.memo_cap) memo_.emplace(std::move(key), g);
    return false;
  }

  std::vector<char> reaching(VertexId target) const {
    std::vector<char> reach(ctx_.net.vertex_count(), 0);
    std::vector<VertexId> stack{target};
    reach[target.index()] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (ArcId a : ctx_.net.in_arcs(v)) {
        if (x_[a.index()] <= 0) continue;
        VertexId tail = ctx_.net.arc(a).tail;
        if (!reach[tail.index()]) {
          reach[tail.index()] = 1;
          stack.push_back(tail);
        }
      }
    }
    return reach;
  }

  // Simple walks from v to target over positive arcs; `on_path` marks
  // vertices already used.
  template <typename Emit>
  void enumerate(VertexId v, VertexId target, Mask colours, Value bottleneck,
                 Value max_cost, std::vector<ArcId>& arcs,
                 std::vector<char>& on_path, const std::vector<char>& useful,
                 Emit& emit) {
    if (v == target) {
      emit(arcs, colours, bottleneck);
      return;
    }
    for (ArcId a : ctx_.net.out_arcs(v)) {
      Value xa = x_[a.index()];
      if (xa <= 0 || !representative(a)) continue;
      VertexId head = ctx_.net.arc(a).head;
      if (!useful[head.index()]) continue;
      if (head != target && on_path[head.index()]) continue;
      Mask next = colours | ctx_.bit[a.index()];
      if (path_cost(next) > max_cost) continue;
      on_path[head.index()] = 1;
      arcs.push_back(a);
      enumerate(head, target, next, std::min(bottleneck, xa), max_cost, arcs,
                on_path, useful, emit);
      arcs.pop_back();
      if (head != target) on_path[head.index()] = 0;
      if (done_ || aborted_) return;
    }
  }

  void apply(const std::vector<ArcId>& arcs, Value amount) {
    for (ArcId a : arcs) x_[a.index()] -= amount;
  }

  void record(Value g) {
    if (g >= best_) return;
    Flow rest(ctx_.net, x_, ctx_.s, ctx_.t);
    Decomposition d;
    d.paths = paths_;
    d.cycles = cycles_;
    for (CycleFlow& c : flow_decompose(rest).cycles) {
      d.cycles.push_back(std::move(c));
    }
    best_ = g;
    witness_ = with_cost(ctx_.net, std::move(d));
    if (stop_at_first_) done_ = true;
  }

  void search(Value g, int paths_used) {
    if (done_ || aborted_) return;
    if (++nodes_ > options_.node_budget) {
      aborted_ = true;
      return;
    }
    if (net_value(ctx_, x_) == 0) {
      record(g);
      return;
    }
    if (seen_cheaper(g, paths_used)) return;

    // Designated arc: smallest positive residual out of s, lowest id.
    std::optional<ArcId> designated;
    for (ArcId a : ctx_.net.out_arcs(ctx_.s)) {
      Value xa = x_[a.index()];
      if (xa > 0 && (!designated || xa < x_[designated->index()])) {
        designated = a;
      }
    }
    if (!designated) return;  // unreachable for valid flows
    const Arc& first = ctx_.net.arc(*designated);
    const Value max_cost = options_.cost_mode == CostMode::kColours
                               ? best_ - 1 - g
                               : std::numeric_limits<Value>::max();
    if (max_cost < 1) return;

    std::vector<Child> children;
    auto collect = [&](VertexId target, bool cycle) {
      std::vector<char> useful = reaching(target);
      if (!useful[first.head.index()]) return;
      std::vector<char> on_path(ctx_.net.vertex_count(), 0);
      on_path[ctx_.s.index()] = 1;
      on_path[first.head.index()] = 1;
      std::vector<ArcId> arcs{*designated};
      auto emit = [&](const std::vector<ArcId>& walk, Mask colours,
                      Value bottleneck) {
        Value step = cycle ? 0 : path_cost(colours);
        int used = paths_used + (cycle ? 0 : 1);
        Value low = options_.value_mode == ValueMode::kAll ? 1 : bottleneck;
        for (Value v = bottleneck; v >= low; --v) {
          apply(walk, v);
          Bounds h = compute_bounds(ctx_, x_, options_.cost_mode);
          apply(walk, -v);
          if (!admissible(g + step, used, h)) continue;
          children.push_back({walk, cycle, v, step, g + step + h.cost});
        }
      };
      enumerate(first.head, target, ctx_.bit[designated->index()],
                x_[designated->index()], max_cost, arcs, on_path, useful,
                emit);
    };
    collect(ctx_.t, false);
    if (positive_into(ctx_, x_, ctx_.s)) collect(ctx_.s, true);

    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.f < b.f; });
    for (const Child& child : children) {
      if (done_ || aborted_) return;
      if (child.f >= best_) break;
      apply(child.arcs, child.value);
      if (child.cycle) {
        cycles_.push_back({child.arcs, child.value});
      } else {
        paths_.push_back({child.arcs, child.value});
      }
      search(g + child.step_cost, paths_used + (child.cycle ? 0 : 1));
      if (child.cycle) {
        cycles_.pop_back();
      } else {
        paths_.pop_back();
      }
      apply(child.arcs, -child.value);
    }
  }

  Context ctx_;
  ExactOptions options_;
  std::vector<Value> x_;
  Value best_ = kInfinity;
  std::optional<Decomposition> witness_;
  std::vector<PathFlow> paths_;
  std::vector<CycleFlow> cycles_;
  std::unordered_map<std::string, Value> memo_;
  std::int64_t nodes_ = 0;
  bool stop_at_first_ = false;
  bool done_ = false;
  bool aborted_ = false;
};

bool within_limit(const Decomposition& d, const ExactOptions& options) {
  return !options.path_limit ||
         static_cast<int>(d.paths.size()) <= *options.path_limit;
}

}  // namespace

Value decomposition_objective(const ColouredNetwork& network,
                              const Decomposition& decomposition,
                              CostMode mode) {
  if (mode == CostMode::kPaths) {
    return static_cast<Value>(decomposition.paths.size());
  }
  return decomposition_cost(network, decomposition);
}

Value lower_bound(const Flow& flow, CostMode mode) {
  require_valid(flow);
  Context ctx = make_context(flow);
  return compute_bounds(ctx, flow.values(), mode).cost;
}

ExactResult exact_min_cost(const Flow& flow, const ExactOptions& options) {
  require_valid(flow);
  Search search(flow, options);
  const ColouredNetwork& net = flow.network();
  for (Decomposition seed :
       {flow_decompose(flow), greedy_max_value_decompose(flow)}) {
    if (!within_limit(seed, options)) continue;
    Value objective = decomposition_objective(net, seed, options.cost_mode);
    if (!search.witness() || objective < search.best()) {
      search.set_incumbent(std::move(seed), objective);
    }
  }
  search.run();

  ExactResult result;
  result.nodes_explored = search.nodes();
  if (search.witness()) {
    result.cost = search.best();
    result.decomposition = search.witness();
  }
  if (search.aborted()) {
    result.status = SearchStatus::kInconclusive;
  } else if (search.witness()) {
    result.status = SearchStatus::kOptimal;
  } else {
    result.status = SearchStatus::kInfeasible;
  }
  return result;
}

Decision decide_k_cost(const Flow& flow, Value k, const ExactOptions& options) {
  if (k < 0) throw InvalidInput("k must be nonnegative");
  require_valid(flow);
  Decision decision;
  const ColouredNetwork& net = flow.network();
  for (Decomposition seed :
       {flow_decompose(flow), greedy_max_value_decompose(flow)}) {
    if (within_limit(seed, options) &&
        decomposition_objective(net, seed, options.cost_mode) <= k) {
      decision.answer = Answer::kYes;
      decision.witness = std::move(seed);
      return decision;
    }
  }
  Search search(flow, options);
  search.set_bound(k + 1);
  search.stop_at_first();
  search.run();
  decision.nodes_explored = search.nodes();
  if (search.witness()) {
    decision.answer = Answer::kYes;
    decision.witness = search.witness();
  } else {
    decision.answer = search.aborted() ? Answer::kInconclusive : Answer::kNo;
  }
  return decision;
}

}  // namespace cfd

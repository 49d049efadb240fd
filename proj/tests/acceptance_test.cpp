// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "cfd/decompose.hpp"
#include "cfd/exact.hpp"
#include "cfd/format.hpp"
#include "cfd/generators.hpp"
#include "cfd/polyalgos.hpp"
#include "cli.hpp"
#include "test_util.hpp"

namespace {

using namespace cfd;
using cfd::testing::Rng;
using cfd::testing::uniform;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks; the criterion passes when none failed.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_++ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& text) {
    info_ += (info_.empty() ? "" : ", ") + text;
  }
  void within(double elapsed, double limit, const std::string& what) {
    std::ostringstream text;
    text.precision(3);
    text << what << " " << elapsed << "s (limit " << limit << "s)";
    note(text.str());
    expect(elapsed < limit, text.str());
  }
  Outcome outcome() const {
    std::string detail = info_;
    if (!pass_) {
      detail += (detail.empty() ? "" : " | ") + std::string("failures: ") +
                std::to_string(failures_) + ": " + notes_;
    }
    return {pass_, detail};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::string notes_;
  std::string info_;
};

ExactResult exact(const Flow& flow, CostMode mode,
                  std::optional<int> path_limit = std::nullopt) {
  ExactOptions options;
  options.cost_mode = mode;
  options.path_limit = path_limit;
  return exact_min_cost(flow, options);
}

bool optimal(const ExactResult& r) {
  return r.status == SearchStatus::kOptimal && r.cost.has_value();
}

std::string run_cli(const std::vector<std::string>& args, int& status) {
  std::ostringstream out;
  std::ostringstream err;
  status = cli::run(args, out, err);
  return out.str();
}

Outcome fig1_reproduction() {
  Checker c;
  auto start = Clock::now();
  Instance fig1 = fixture("fig1");
  auto path = std::filesystem::temp_directory_path() / "cfd_acceptance_fig1.cfd";
  {
    std::ofstream file(path);
    file << serialize_instance(fig1);
  }
  int status = 0;
  std::string out = run_cli({"solve", path.string()}, status);
  std::filesystem::remove(path);
  SolutionFile solved = parse_solution(out, fig1);
  c.expect(status == 0, "solve exit status " + std::to_string(status));
  c.expect(solved.declared_cost == 2 && solved.decomposition.cost == 2,
           "solve cost " + std::to_string(solved.decomposition.cost));
  c.expect(solved.decomposition.paths.size() == 2, "solve path count");
  c.expect(verify_decomposition(fig1.flow, solved.decomposition).ok(),
           "solve witness invalid");
  c.note("solve cost " + std::to_string(solved.decomposition.cost));

  ExactResult r = exact(fig1.flow, CostMode::kColours);
  c.expect(optimal(r) && *r.cost == 2, "exact optimum not 2");
  c.note("exact " + (r.cost ? std::to_string(*r.cost) : std::string("-")));

  // Paths s-a-t and s-c-t plus the cycle a-b-c-d-a.
  Decomposition stripped;
  stripped.paths = {{{ArcId(0), ArcId(3)}, 1}, {{ArcId(1), ArcId(6)}, 1}};
  stripped.cycles = {{{ArcId(2), ArcId(4), ArcId(5), ArcId(7)}, 1}};
  DecompositionReport report = verify_decomposition(fig1.flow, stripped);
  c.expect(report.ok() && report.cost == 4,
           "sat+sct+cycle cost " + std::to_string(report.cost));
  c.note("sat+sct+cycle " + std::to_string(report.cost));
  c.within(seconds_since(start), 1.0, "runtime");
  return c.outcome();
}

Outcome fig3_reproduction() {
  Checker c;
  auto start = Clock::now();
  Instance fig3 = fixture("fig3");
  TwoValueTrace trace = flow_decomposition_2v(fig3.flow, 7, 5);
  std::vector<Value> expected{0, 5, 4, 2};
  c.expect(trace.p == expected, "P differs from <0,5,4,2>");
  c.expect(trace.total_paths() == 11, "total paths not 11");
  c.expect(trace.decomposition.paths.size() == 11, "witness path count");
  c.expect(verify_decomposition(fig3.flow, trace.decomposition).ok(),
           "witness invalid");
  std::string p;
  for (Value v : trace.p) p += (p.empty() ? "" : ",") + std::to_string(v);
  c.note("P=<" + p + "> total " + std::to_string(trace.total_paths()));
  c.within(seconds_since(start), 1.0, "runtime");
  return c.outcome();
}

Outcome fig4_reproduction() {
  Checker c;
  Instance fig4 = fixture("fig4");
  Decomposition greedy = greedy_max_value_decompose(fig4.flow);
  c.expect(greedy.paths.size() == 7,
           "greedy paths " + std::to_string(greedy.paths.size()));
  auto start = Clock::now();
  ExactResult r = exact(fig4.flow, CostMode::kPaths);
  double elapsed = seconds_since(start);
  c.expect(optimal(r) && *r.cost == 6, "exact path count not 6");
  c.note("greedy " + std::to_string(greedy.paths.size()) + ", exact " +
         (r.cost ? std::to_string(*r.cost) : std::string("-")));
  c.within(elapsed, 10.0, "exact");
  return c.outcome();
}

Outcome fig5_reproduction() {
  Checker c;
  Instance fig5 = fixture("fig5");
  ExactResult r = exact(fig5.flow, CostMode::kColours);
  c.expect(optimal(r) && *r.cost == 6, "exact optimum not 6");

  // Extract the monochromatic value-2 path s-c-d-t first.
  std::vector<ArcId> scdt{ArcId(0), ArcId(2), ArcId(4)};
  c.expect(path_colour_count(fig5.network(), scdt) == 1,
           "s-c-d-t not monochromatic");
  std::vector<Value> rest(fig5.flow.values().begin(), fig5.flow.values().end());
  for (ArcId a : scdt) rest[a.index()] -= 2;
  Flow residual(fig5.network(), rest, fig5.flow.source(), fig5.flow.sink());
  ExactResult after = exact(residual, CostMode::kColours);
  c.expect(optimal(after), "residual search inconclusive");
  Value total = 1 + after.cost.value_or(-100);
  c.expect(total == 9, "monochromatic-first cost " + std::to_string(total));
  c.note("exact " + (r.cost ? std::to_string(*r.cost) : std::string("-")) +
         ", monochromatic-first " + std::to_string(total));
  return c.outcome();
}

Outcome fig6_reproduction() {
  Checker c;
  Instance fig6 = fixture("fig6");
  ExactResult r = exact(fig6.flow, CostMode::kColours);
  c.expect(optimal(r) && *r.cost == 7, "exact optimum not 7");
  ExactResult cardinality = exact(fig6.flow, CostMode::kPaths);
  c.expect(optimal(cardinality) && *cardinality.cost == 6,
           "minimum path count not 6");
  ExactResult limited = exact(fig6.flow, CostMode::kColours, 6);
  c.expect(optimal(limited) && *limited.cost == 11,
           "cheapest 6-path decomposition costs " +
               (limited.cost ? std::to_string(*limited.cost) : "-"));
  c.note("exact " + (r.cost ? std::to_string(*r.cost) : std::string("-")) +
         ", 6-path " +
         (limited.cost ? std::to_string(*limited.cost) : std::string("-")));
  return c.outcome();
}

Outcome greedy_gap_family() {
  Checker c;
  for (int n = 3; n <= 5; ++n) {
    auto start = Clock::now();
    GeneratedInstance g = gen_greedy_gap(n);
    Decomposition greedy = greedy_max_value_decompose(g.instance.flow);
    ExactResult r = exact(g.instance.flow, CostMode::kPaths);
    double elapsed = seconds_since(start);
    c.expect(static_cast<int>(greedy.paths.size()) == 2 * n + 1,
             "n=" + std::to_string(n) + " greedy " +
                 std::to_string(greedy.paths.size()));
    c.expect(optimal(r) && *r.cost == n + 3,
             "n=" + std::to_string(n) + " exact " +
                 (r.cost ? std::to_string(*r.cost) : std::string("-")));
    c.note("n=" + std::to_string(n) + ": greedy " +
           std::to_string(greedy.paths.size()) + " exact " +
           (r.cost ? std::to_string(*r.cost) : std::string("-")));
    c.within(elapsed, 60.0, "n=" + std::to_string(n));
  }
  return c.outcome();
}

std::vector<Value> random_partition_values(Rng& rng, int r, Value target,
                                           bool planted) {
  while (true) {
    std::vector<Value> values;
    Value lo = target / 4 + 1;
    Value hi = (target - 1) / 2;
    if (planted) {
      for (int j = 0; j < r; ++j) {
        Value a = uniform(rng, lo, hi);
        Value b = uniform(rng, lo, hi);
        Value rest = target - a - b;
        if (rest < lo || rest > hi) break;
        values.insert(values.end(), {a, b, rest});
      }
    } else {
      for (int i = 0; i < 3 * r; ++i) values.push_back(uniform(rng, lo, hi));
    }
    if (static_cast<int>(values.size()) != 3 * r) continue;
    bool valid = std::accumulate(values.begin(), values.end(), Value{0}) ==
                 r * target;
    for (Value v : values) valid = valid && 4 * v > target && 2 * v < target;
    if (!valid) continue;
    std::shuffle(values.begin(), values.end(), rng);
    return values;
  }
}

LinkageQuery random_linkage_base(Rng& rng, int max_vertices, int max_arcs) {
  while (true) {
    LinkageQuery q;
    q.graph.vertex_count = static_cast<int>(uniform(rng, 4, max_vertices));
    const int n = q.graph.vertex_count;
    const int m = static_cast<int>(uniform(rng, 2, max_arcs));
    for (int i = 0; i < m; ++i) {
      int tail = static_cast<int>(uniform(rng, 0, n - 1));
      int head = static_cast<int>(uniform(rng, 0, n - 2));
      if (head >= tail) ++head;
      q.graph.arcs.push_back({tail, head});
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    q.u1 = order[0];
    q.u2 = order[1];
    q.v1 = order[2];
    q.v2 = order[3];
    std::vector<int> out(n, 0), in(n, 0);
    for (auto [tail, head] : q.graph.arcs) {
      ++out[tail];
      ++in[head];
    }
    if (out[q.u1] && out[q.u2] && in[q.v1] && in[q.v2]) return q;
  }
}

Formula random_formula(Rng& rng, int n, int m) {
  Formula f;
  f.variable_count = n;
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause clause;
    for (int i = 0; i < 3; ++i) {
      clause[i] = {vars[i], uniform(rng, 0, 1) == 1};
    }
    f.clauses.push_back(clause);
  }
  return f;
}

Outcome certificate_suite() {
  Checker c;
  auto start = Clock::now();
  Rng rng(20240607);
  int yes = 0;
  int no = 0;
  auto agree = [&](const std::string& label, bool expected,
                   const GeneratedInstance& g) {
    Decision d = decide_k_cost(g.instance.flow, g.certificate.threshold);
    c.expect(d.answer != Answer::kInconclusive, label + " inconclusive");
    bool answer = d.answer == Answer::kYes;
    c.expect(answer == expected, label + " disagrees with brute force");
    if (d.witness) {
      c.expect(verify_decomposition(g.instance.flow, *d.witness).ok() &&
                   d.witness->cost <= g.certificate.threshold,
               label + " witness invalid");
    }
    (expected ? yes : no)++;
  };

  for (int i = 0; i < 20; ++i) {
    Value target = uniform(rng, 13, 40);
    auto values = random_partition_values(rng, 2, target, i % 2 == 0);
    agree("3-partition #" + std::to_string(i),
          cfd::testing::brute_force_3partition(values, target),
          gen_3partition(values, target));
  }
  for (int i = 0; i < 10; ++i) {
    LinkageQuery q = random_linkage_base(rng, 6, 7);
    agree("weak-2-linkage #" + std::to_string(i),
          cfd::testing::brute_force_weak_linkage(q), gen_weak2linkage(q));
  }
  for (int i = 0; i < 15; ++i) {
    Formula f = random_formula(rng, 3, static_cast<int>(uniform(rng, 1, 3)));
    agree("1-in-3SAT #" + std::to_string(i), cfd::testing::brute_force_1in3(f),
          gen_1in3sat(f));
  }
  for (int i = 0; i < 10; ++i) {
    Flow base = cfd::testing::random_124_flow(rng, 5, 3);
    Value best = cfd::testing::brute_force_min_decomposition(
        base, cfd::testing::Objective::kPaths);
    Value k = std::max<Value>(0, best - static_cast<Value>(i % 2));
    int q = static_cast<int>(uniform(rng, 2, 3));
    agree("splittable #" + std::to_string(i), best <= k,
          gen_from_splittable(base, q, k));
  }
  c.note(std::to_string(yes) + " yes / " + std::to_string(no) + " no");
  c.within(seconds_since(start), 300.0, "total");
  return c.outcome();
}

Outcome oracle_suite() {
  Checker c;
  auto start = Clock::now();
  Rng rng(77031);
  int count = 0;
  int max_arcs = 0;
  int total_arcs = 0;
  int two_valued = 0;
  auto tally = [&](const Flow& flow) {
    max_arcs = std::max(max_arcs, flow.network().arc_count());
    total_arcs += flow.network().arc_count();
  };
  for (int i = 0; i < 200; ++i) {
    Value lambda = uniform(rng, 1, 3);
    Flow flow = cfd::testing::random_uniform_bichromatic(rng, 10, lambda);
    tally(flow);
    BichromaticResult poly = mincost_bichromatic_uniform(flow, lambda);
    ExactResult r = exact(flow, CostMode::kColours);
    c.expect(optimal(r) && *r.cost == poly.cost,
             "uniform #" + std::to_string(i) + " poly " +
                 std::to_string(poly.cost) + " exact " +
                 (r.cost ? std::to_string(*r.cost) : std::string("-")));
    ++count;
  }
  for (int i = 0; i < 200; ++i) {
    Value b = uniform(rng, 1, 5);
    Value a = uniform(rng, b + 1, 8);
    Flow flow = cfd::testing::random_two_value_dag(rng, 8, a, b);
    tally(flow);
    std::vector<Value> values = flow.positive_values();
    Value big = values.back();
    Value small = values.front();
    two_valued += values.size() == 2 ? 1 : 0;
    TwoValueTrace trace = flow_decomposition_2v(flow, big, small);
    ExactResult r = exact(flow, CostMode::kPaths);
    c.expect(optimal(r) && *r.cost == trace.total_paths(),
             "two-value #" + std::to_string(i) + " (a=" + std::to_string(big) +
                 ",b=" + std::to_string(small) + ") sum " +
                 std::to_string(trace.total_paths()) + " exact " +
                 (r.cost ? std::to_string(*r.cost) : std::string("-")));
    ++count;
  }
  for (int i = 0; i < 100; ++i) {
    Value v2 = uniform(rng, 1, 2);
    Value k = uniform(rng, 2, 3);
    Flow flow = cfd::testing::random_divisible_bichromatic(rng, 7, v2, k);
    tally(flow);
    BichromaticResult poly = mincost_bichromatic_divisible(flow, k * v2, v2);
    ExactResult r = exact(flow, CostMode::kColours);
    c.expect(optimal(r) && *r.cost == poly.cost,
             "divisible #" + std::to_string(i) + " poly " +
                 std::to_string(poly.cost) + " exact " +
                 (r.cost ? std::to_string(*r.cost) : std::string("-")));
    ++count;
  }
  c.note(std::to_string(count) + " instances, mean " +
         std::to_string(total_arcs / count) + " arcs, max " +
         std::to_string(max_arcs) + ", " + std::to_string(two_valued) +
         "/200 two-value instances carry both values");
  c.within(seconds_since(start), 600.0, "total");
  return c.outcome();
}

int euclid_steps(Value a, Value b) {
  int steps = 0;
  while (b > 0) {
    Value r = a % b;
    a = b;
    b = r;
    ++steps;
  }
  return steps;
}

Outcome structural_suite() {
  Checker c;
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    Flow flow = cfd::testing::random_flow(rng);
    Decomposition d = flow_decompose(flow);
    const std::size_t limit =
        flow.network().vertex_count() + flow.network().arc_count();
    c.expect(verify_decomposition(flow, d).ok(),
             "flow #" + std::to_string(i) + " decomposition invalid");
    c.expect(d.paths.size() + d.cycles.size() <= limit,
             "flow #" + std::to_string(i) + " exceeds n + m components");
  }
  for (int i = 0; i < 500; ++i) {
    Value a = uniform(rng, 2, 1'000'000);
    Value b = uniform(rng, 1, a - 1);
    Flow flow = cfd::testing::random_two_value_dag(rng, 6, a, b);
    std::vector<Value> values = flow.positive_values();
    Value big = values.back();
    Value small = values.front();
    TwoValueTrace trace = flow_decomposition_2v(flow, big, small);
    const auto& seq = trace.a_sequence;
    std::string label = "pair (" + std::to_string(big) + "," +
                        std::to_string(small) + ")";
    bool decreasing = true;
    for (std::size_t j = 1; j < seq.size(); ++j) {
      decreasing = decreasing && seq[j] < seq[j - 1];
    }
    c.expect(decreasing, label + " sequence not strictly decreasing");
    c.expect(!seq.empty() && big % seq.back() == 0 && small % seq.back() == 0,
             label + " final a does not divide both values");
    const int expected_rounds = big == small ? 1 : euclid_steps(big, small) + 1;
    const int digits = static_cast<int>(std::to_string(small).size());
    c.expect(static_cast<int>(seq.size()) == expected_rounds &&
                 static_cast<int>(seq.size()) <= 5 * digits + 1,
             label + " iteration count " + std::to_string(seq.size()));
    c.expect(verify_decomposition(flow, trace.decomposition).ok(),
             label + " decomposition invalid");
  }
  c.note("500 flows, 500 value pairs");
  return c.outcome();
}

Outcome size_formula_suite() {
  Checker c;
  Rng rng(4242);
  auto sizes = [](const GeneratedInstance& g) {
    return std::pair{g.instance.network().vertex_count(),
                     g.instance.network().arc_count()};
  };
  for (int i = 0; i < 100; ++i) {
    int r = static_cast<int>(uniform(rng, 1, 6));
    Value target = uniform(rng, 13, 60);
    auto values = random_partition_values(rng, r, target, true);
    GeneratedInstance g = gen_3partition(values, target);
    c.expect(sizes(g) == std::pair{4 * r + 3, 8 * r},
             "3-partition r=" + std::to_string(r));
    c.expect(validate_flow(g.instance.flow).ok(), "3-partition flow invalid");
  }
  for (int i = 0; i < 100; ++i) {
    Flow base = cfd::testing::random_124_flow(rng, 8, 5);
    int q = static_cast<int>(uniform(rng, 2, 6));
    GeneratedInstance g = gen_from_splittable(base, q, 3);
    int n = base.network().vertex_count();
    int m = base.network().arc_count();
    c.expect(sizes(g) == std::pair{n + q - 1, m + 2 * q - 2},
             "splittable q=" + std::to_string(q));
    c.expect(validate_flow(g.instance.flow).ok(), "splittable flow invalid");
  }
  for (int i = 0; i < 100; ++i) {
    LinkageQuery q = random_linkage_base(rng, 10, 20);
    GeneratedInstance g = gen_weak2linkage(q, {uniform(rng, 1, 3), false});
    int n = q.graph.vertex_count;
    int m = static_cast<int>(q.graph.arcs.size());
    c.expect(sizes(g) == std::pair{n + 6, 7 * m - 8},
             "weak-2-linkage n=" + std::to_string(n) +
                 " m=" + std::to_string(m));
    c.expect(validate_flow(g.instance.flow).ok() &&
                 g.instance.flow.value() == m * g.instance.flow.values()[0],
             "weak-2-linkage flow invalid");
  }
  for (int i = 0; i < 100; ++i) {
    int n = static_cast<int>(uniform(rng, 3, 8));
    int m = static_cast<int>(uniform(rng, 0, 8));
    GeneratedInstance g = gen_1in3sat(random_formula(rng, n, m));
    c.expect(sizes(g) == std::pair{n + 2 * m + 2, 4 * n + 6 * m},
             "1-in-3SAT n=" + std::to_string(n) + " m=" + std::to_string(m));
    c.expect(validate_flow(g.instance.flow).ok() &&
                 g.instance.network().is_acyclic(),
             "1-in-3SAT flow invalid or cyclic");
  }
  c.note("400 generated instances");
  return c.outcome();
}

Outcome round_trip_suite() {
  Checker c;
  auto check = [&](const Instance& instance, const std::string& label) {
    std::string text = serialize_instance(instance, label);
    Instance parsed = parse_instance(text);
    c.expect(parsed == instance, label + " parse(serialize) differs");
    c.expect(serialize_instance(parsed, label) == text,
             label + " serialization not byte-identical");
    c.expect(serialize_instance(instance, label) == text,
             label + " serialization not deterministic");
  };
  for (const std::string& name : fixture_names()) check(fixture(name), name);
  Rng rng(5150);
  for (int i = 0; i < 500; ++i) {
    Instance instance{cfd::testing::random_flow(rng), std::nullopt};
    if (i % 3 == 0) instance.bound = uniform(rng, 0, 20);
    check(instance, "random #" + std::to_string(i));
  }
  c.note("6 fixtures, 500 random instances");
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "fig1: solve cost 2, stripped-circulation decomposition cost 4",
       fig1_reproduction},
      {2, "fig3: two-value trace P = <0,5,4,2>, 11 paths", fig3_reproduction},
      {3, "fig4: greedy 7 paths, exact minimum 6", fig4_reproduction},
      {4, "fig5: exact cost 6, monochromatic-first cost 9", fig5_reproduction},
      {5, "fig6: exact cost 7, cheapest 6-path decomposition 11",
       fig6_reproduction},
      {6, "greedy-gap n=3,4,5: greedy 2n+1, exact n+3", greedy_gap_family},
      {7, "reduction certificates agree with brute force", certificate_suite},
      {8, "polynomial algorithms agree with exact search", oracle_suite},
      {9, "decomposition and Euclid-trace invariants", structural_suite},
      {10, "generator size formulas", size_formula_suite},
      {11, "instance format round trip", round_trip_suite},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("[%s] criterion %2d: %s (%.2fs) -- %s\n",
                outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                seconds_since(start), outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

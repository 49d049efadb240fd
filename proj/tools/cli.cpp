#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cfd/decompose.hpp"
#include "cfd/exact.hpp"
#include "cfd/format.hpp"
#include "cfd/generators.hpp"
#include "cfd/polyalgos.hpp"

namespace cfd::cli {

namespace {

using nlohmann::json;

// Raised for unusable input files or parameters; maps to kUsage.
class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadInput("cannot write '" + path + "'");
  out << text;
}

Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, separator)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

Value to_value(const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw BadInput("expected an integer, got '" + text + "'");
  }
}

json component_json(const ColouredNetwork& net, const std::vector<ArcId>& arcs,
                    Value value) {
  json vertices = json::array();
  for (VertexId v : walk_vertices(net, arcs)) vertices.push_back(v.value() + 1);
  json ids = json::array();
  for (ArcId a : arcs) ids.push_back(a.value() + 1);
  return {{"value", value},
          {"vertices", vertices},
          {"arcs", ids},
          {"colours", path_colour_count(net, arcs)}};
}

json decomposition_json(const ColouredNetwork& net, const Decomposition& d) {
  json paths = json::array();
  for (const PathFlow& p : d.paths) {
    paths.push_back(component_json(net, p.arcs, p.value));
  }
  json cycles = json::array();
  for (const CycleFlow& c : d.cycles) {
    cycles.push_back(component_json(net, c.arcs, c.value));
  }
  return {{"cost", decomposition_cost(net, d)},
          {"paths", paths},
          {"cycles", cycles}};
}

struct Settings {
  std::string format = "text";
  std::uint64_t seed = 0;
  bool json() const { return format == "json"; }
};

std::int64_t node_budget() {
  std::int64_t budget = ExactOptions{}.node_budget;
  if (const char* env = std::getenv(kNodeBudgetVariable)) {
    try {
      budget = std::stoll(env);
    } catch (const std::exception&) {
      throw BadInput(std::string(kNodeBudgetVariable) +
                     " must be an integer");
    }
    if (budget < 1) {
      throw BadInput(std::string(kNodeBudgetVariable) + " must be positive");
    }
  }
  return budget;
}

void print_solution(std::ostream& out, const Settings& settings,
                    const ColouredNetwork& net, const Decomposition& d,
                    const json& extra, const std::vector<std::string>& notes) {
  if (settings.json()) {
    json doc = extra;
    doc["solution"] = decomposition_json(net, d);
    out << doc.dump(2) << '\n';
    return;
  }
  for (const std::string& note : notes) out << "c " << note << '\n';
  out << serialize_solution(net, d);
}

struct Solved {
  Selection selection;
  Decomposition decomposition;
  bool inconclusive = false;
  std::int64_t nodes = 0;
};

Solved solve(const Instance& instance) {
  const Flow& flow = instance.flow;
  Solved solved{select_algorithm(instance), {}, false, 0};
  std::vector<Value> values = flow.positive_values();
  const std::string& algorithm = solved.selection.algorithm;
  if (algorithm == "circulation") {
    solved.decomposition = flow_decompose(flow);
  } else if (algorithm == "bichromatic-uniform") {
    solved.decomposition =
        mincost_bichromatic_uniform(flow, values[0]).decomposition;
  } else if (algorithm == "bichromatic-divisible") {
    solved.decomposition =
        mincost_bichromatic_divisible(flow, values[1], values[0])
            .decomposition;
  } else if (algorithm == "two-value") {
    solved.decomposition =
        flow_decomposition_2v(flow, values[1], values[0]).decomposition;
  } else if (algorithm == "uniform") {
    solved.decomposition = decompose_uniform(flow, values[0]);
  } else {
    ExactOptions options;
    options.node_budget = node_budget();
    ExactResult result = exact_min_cost(flow, options);
    solved.nodes = result.nodes_explored;
    solved.inconclusive = result.status != SearchStatus::kOptimal;
    solved.selection.optimal = !solved.inconclusive;
    solved.decomposition =
        result.decomposition ? *result.decomposition : flow_decompose(flow);
  }
  return solved;
}

int cmd_solve(const std::string& path, const Settings& settings,
              std::ostream& out, std::ostream& err) {
  Instance instance = load_instance(path);
  Solved solved = solve(instance);
  if (!solved.selection.warning.empty()) {
    err << "warning: " << solved.selection.warning << '\n';
  }
  const ColouredNetwork& net = instance.network();
  json extra = {{"algorithm", solved.selection.algorithm},
                {"optimal", solved.selection.optimal}};
  std::vector<std::string> notes{
      "algorithm " + solved.selection.algorithm,
      std::string("optimal ") + (solved.selection.optimal ? "yes" : "no")};
  if (solved.selection.algorithm == "exact") {
    extra["nodes"] = solved.nodes;
    notes.push_back("nodes " + std::to_string(solved.nodes));
  }
  if (solved.inconclusive) {
    err << "node budget exhausted; the decomposition below is the best "
           "found, not a proven optimum\n";
  }
  print_solution(out, settings, net, solved.decomposition, extra, notes);
  return solved.inconclusive ? kInconclusive : kSuccess;
}

int cmd_decide(const std::string& path, std::optional<Value> k,
               const Settings& settings, std::ostream& out,
               std::ostream& err) {
  Instance instance = load_instance(path);
  if (!k) k = instance.bound;
  if (!k) throw BadInput("no bound: pass --k or add a 'k' line");
  if (*k < 0) throw BadInput("--k must be nonnegative");
  ExactOptions options;
  options.node_budget = node_budget();
  Decision decision = decide_k_cost(instance.flow, *k, options);
  const char* answer = decision.answer == Answer::kYes  ? "yes"
                       : decision.answer == Answer::kNo ? "no"
                                                        : "inconclusive";
  if (settings.json()) {
    json doc = {{"k", *k},
                {"answer", answer},
                {"nodes", decision.nodes_explored}};
    if (decision.witness) {
      doc["solution"] =
          decomposition_json(instance.network(), *decision.witness);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "c answer " << answer << '\n';
    out << "c k " << *k << '\n';
    if (decision.witness) {
      out << serialize_solution(instance.network(), *decision.witness);
    }
  }
  if (decision.answer == Answer::kInconclusive) {
    err << "node budget exhausted before an answer was found\n";
    return kInconclusive;
  }
  return decision.answer == Answer::kYes ? kSuccess : kNo;
}

int cmd_heuristic(const std::string& path, bool greedy,
                  const Settings& settings, std::ostream& out) {
  Instance instance = load_instance(path);
  Decomposition d = greedy ? greedy_max_value_decompose(instance.flow)
                           : flow_decompose(instance.flow);
  const char* name = greedy ? "greedy-max-value" : "flow-decompose";
  print_solution(out, settings, instance.network(), d,
                 {{"algorithm", name}},
                 {std::string("algorithm ") + name});
  return kSuccess;
}

int cmd_verify(const std::string& instance_path,
               const std::string& solution_path, const Settings& settings,
               std::ostream& out) {
  Instance instance = load_instance(instance_path);
  SolutionFile solution;
  try {
    solution = parse_solution(read_file(solution_path), instance);
  } catch (const ParseError& e) {
    throw BadInput(solution_path + ": " + e.what());
  }
  DecompositionReport report =
      verify_decomposition(instance.flow, solution.decomposition);
  const bool cost_ok = solution.declared_cost == report.cost;
  const bool ok = report.ok() && cost_ok;
  if (settings.json()) {
    json mismatches = json::array();
    for (const auto& m : report.mismatches) {
      mismatches.push_back({{"arc", m.arc.value() + 1},
                            {"expected", m.expected},
                            {"actual", m.actual}});
    }
    json errors = json::array();
    for (const auto& e : report.component_errors) {
      errors.push_back({{"kind", e.is_cycle ? "cycle" : "path"},
                        {"index", e.index + 1},
                        {"message", e.message}});
    }
    out << json{{"valid", ok},
                {"cost", report.cost},
                {"declared_cost", solution.declared_cost},
                {"mismatches", mismatches},
                {"component_errors", errors}}
               .dump(2)
        << '\n';
  } else if (ok) {
    out << "valid cost " << report.cost << '\n';
  } else {
    out << "invalid\n";
    const ColouredNetwork& net = instance.network();
    for (const auto& m : report.mismatches) {
      const Arc& arc = net.arc(m.arc);
      out << "arc " << m.arc.value() + 1 << " (" << arc.tail.value() + 1
          << " -> " << arc.head.value() + 1 << ") expects " << m.expected
          << " but components sum to " << m.actual << '\n';
    }
    for (const auto& e : report.component_errors) {
      out << (e.is_cycle ? "cycle " : "path ") << e.index + 1 << ": "
          << e.message << '\n';
    }
    if (!cost_ok) {
      out << "declared cost " << solution.declared_cost
          << " differs from recomputed cost " << report.cost << '\n';
    }
  }
  return ok ? kSuccess : kNo;
}

int cmd_info(const std::string& path, const Settings& settings,
             std::ostream& out) {
  Instance instance = load_instance(path);
  const Flow& flow = instance.flow;
  const ColouredNetwork& net = flow.network();
  std::vector<Colour> colours = net.colours();
  std::vector<Colour> used = flow.support_colours();
  std::vector<Value> values = flow.positive_values();
  const bool uniform = values.size() == 1;
  const bool acyclic = support(flow, 1).is_acyclic();
  Selection selection = select_algorithm(instance);
  if (settings.json()) {
    json doc = {{"vertices", net.vertex_count()},
                {"arcs", net.arc_count()},
                {"source", flow.source().value() + 1},
                {"sink", flow.sink().value() + 1},
                {"value", flow.value()},
                {"colours", colours},
                {"support_colours", used},
                {"values", values},
                {"uniform", uniform},
                {"acyclic", acyclic},
                {"clean_terminals", has_clean_terminals(flow)},
                {"solver", selection.algorithm}};
    if (instance.bound) doc["bound"] = *instance.bound;
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  auto list = [](const auto& items) {
    std::string text;
    for (const auto& item : items) {
      if (!text.empty()) text += ' ';
      text += std::to_string(item);
    }
    return text;
  };
  out << "vertices " << net.vertex_count() << '\n'
      << "arcs " << net.arc_count() << '\n'
      << "source " << flow.source().value() + 1 << '\n'
      << "sink " << flow.sink().value() + 1 << '\n'
      << "value " << flow.value() << '\n'
      << "colours " << colours.size() << " [" << list(colours) << "]\n"
      << "support-colours " << used.size() << " [" << list(used) << "]\n"
      << "values [" << list(values) << "]\n"
      << "uniform " << (uniform ? "yes" : "no") << '\n'
      << "acyclic " << (acyclic ? "yes" : "no") << '\n'
      << "clean-terminals " << (has_clean_terminals(flow) ? "yes" : "no")
      << '\n';
  if (instance.bound) out << "bound " << *instance.bound << '\n';
  out << "solver " << selection.algorithm << '\n';
  return kSuccess;
}

struct GenerateArgs {
  std::string kind;
  std::string output;
  std::string witness_output;
  // 3partition
  std::string values;
  Value target = 0;
  // splittable
  std::string base;
  std::string base_solution;
  int q = 2;
  Value k = 0;
  // weak2linkage
  int vertices = 0;
  std::string arcs;
  std::string terminals;
  bool degree_bounded = false;
  // 1in3sat
  std::string clauses;
  Value lambda = 1;
  // greedy-gap, 1in3sat variable count
  int n = 0;
  // fixture
  std::string name;
  // random
  int paths = 4;
  int colours = 2;
  Value max_value = 3;
  Value slack = 0;
};

Flow random_flow(const GenerateArgs& a, std::uint64_t seed) {
  const int n = a.vertices == 0 ? 6 : a.vertices;
  if (n < 2) throw BadInput("--vertices must be at least 2");
  if (a.paths < 0 || a.colours < 1 || a.max_value < 1 || a.slack < 0) {
    throw BadInput("--paths, --colours, --max-value, --slack out of range");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](Value lo, Value hi) {
    return std::uniform_int_distribution<Value>(lo, hi)(rng);
  };
  struct Row {
    int tail, head;
    Colour colour;
    Value flow;
  };
  std::vector<Row> rows;
  std::vector<int> middle;
  for (int v = 1; v + 1 < n; ++v) middle.push_back(v);
  for (int p = 0; p < a.paths; ++p) {
    std::shuffle(middle.begin(), middle.end(), rng);
    std::vector<int> route{0};
    int k = static_cast<int>(uniform(0, static_cast<Value>(middle.size())));
    route.insert(route.end(), middle.begin(), middle.begin() + k);
    route.push_back(n - 1);
    Value value = uniform(1, a.max_value);
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      std::vector<std::size_t> existing;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].tail == route[i] && rows[r].head == route[i + 1]) {
          existing.push_back(r);
        }
      }
      if (!existing.empty() && uniform(0, 1) == 1) {
        rows[existing[uniform(0, static_cast<Value>(existing.size()) - 1)]]
            .flow += value;
      } else {
        rows.push_back({route[i], route[i + 1],
                        static_cast<Colour>(uniform(1, a.colours)), value});
      }
    }
  }
  ColouredNetwork::Builder builder(n);
  std::vector<Value> flow;
  for (const Row& row : rows) {
    builder.add_arc(VertexId(row.tail), VertexId(row.head),
                    row.flow + uniform(0, a.slack), row.colour);
    flow.push_back(row.flow);
  }
  return Flow(builder.build(), std::move(flow), VertexId(0), VertexId(n - 1));
}

GeneratedInstance generate(const GenerateArgs& a, std::uint64_t seed) {
  if (a.kind == "3partition") {
    std::vector<Value> values;
    for (const std::string& v : split(a.values, ',')) {
      values.push_back(to_value(v));
    }
    return gen_3partition(values, a.target);
  }
  if (a.kind == "splittable") {
    if (a.base.empty()) throw BadInput("--base is required");
    Instance base = load_instance(a.base);
    std::optional<Decomposition> witness;
    if (!a.base_solution.empty()) {
      try {
        witness = parse_solution(read_file(a.base_solution), base)
                      .decomposition;
      } catch (const ParseError& e) {
        throw BadInput(a.base_solution + ": " + e.what());
      }
    }
    return gen_from_splittable(base.flow, a.q, a.k, witness);
  }
  if (a.kind == "weak2linkage") {
    LinkageQuery query;
    query.graph.vertex_count = a.vertices;
    for (const std::string& arc : split(a.arcs, ',')) {
      std::vector<std::string> ends = split(arc, '-');
      if (ends.size() != 2) throw BadInput("arc '" + arc + "' is not tail-head");
      query.graph.arcs.push_back({static_cast<int>(to_value(ends[0])) - 1,
                                  static_cast<int>(to_value(ends[1])) - 1});
    }
    std::vector<std::string> t = split(a.terminals, ',');
    if (t.size() != 4) throw BadInput("--terminals needs u1,u2,v1,v2");
    query.u1 = static_cast<int>(to_value(t[0])) - 1;
    query.u2 = static_cast<int>(to_value(t[1])) - 1;
    query.v1 = static_cast<int>(to_value(t[2])) - 1;
    query.v2 = static_cast<int>(to_value(t[3])) - 1;
    return gen_weak2linkage(query, {a.lambda, a.degree_bounded});
  }
  if (a.kind == "1in3sat") {
    Formula formula;
    formula.variable_count = a.n;
    for (const std::string& clause : split(a.clauses, ';')) {
      std::vector<std::string> literals = split(clause, ',');
      if (literals.size() != 3) {
        throw BadInput("clause '" + clause + "' needs exactly 3 literals");
      }
      Clause c;
      for (int i = 0; i < 3; ++i) {
        Value v = to_value(literals[i]);
        if (v == 0) throw BadInput("literal 0 is not a variable");
        c[i] = {static_cast<int>(std::abs(v)) - 1, v < 0};
        if (a.n == 0) {
          formula.variable_count =
              std::max(formula.variable_count, c[i].variable + 1);
        }
      }
      formula.clauses.push_back(c);
    }
    return gen_1in3sat(formula, a.lambda);
  }
  if (a.kind == "greedy-gap") return gen_greedy_gap(a.n);
  if (a.kind == "fixture") {
    Instance instance = fixture(a.name);
    return {std::move(instance), {}, "fixture " + a.name};
  }
  if (a.kind == "random") {
    return {Instance{random_flow(a, seed), std::nullopt},
            {},
            "random seed=" + std::to_string(seed)};
  }
  throw BadInput("unknown generator '" + a.kind +
                 "'; expected 3partition, splittable, weak2linkage, 1in3sat, "
                 "greedy-gap, fixture or random");
}

int cmd_generate(const GenerateArgs& a, const Settings& settings,
                 std::ostream& out) {
  GeneratedInstance g = generate(a, settings.seed);
  const bool certified = a.kind != "fixture" && a.kind != "random";
  std::string text = serialize_instance(g.instance, g.provenance);
  const ColouredNetwork& net = g.instance.network();
  std::string witness_text;
  if (g.certificate.witness) {
    witness_text = serialize_solution(net, *g.certificate.witness);
  }
  if (!a.witness_output.empty()) {
    if (!g.certificate.witness) {
      throw BadInput("no witness is known for this instance");
    }
    write_file(a.witness_output, witness_text);
  }
  if (settings.json()) {
    json doc = {{"provenance", g.provenance}, {"instance", text}};
    if (certified) {
      doc["threshold"] = g.certificate.threshold;
      doc["objective"] = g.certificate.objective == CostMode::kPaths
                             ? "paths"
                             : "colours";
    }
    if (g.certificate.witness) {
      doc["witness"] = decomposition_json(net, *g.certificate.witness);
    }
    if (a.output.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      write_file(a.output, doc.dump(2) + "\n");
    }
    return kSuccess;
  }
  if (a.output.empty()) {
    out << text;
  } else {
    write_file(a.output, text);
  }
  return kSuccess;
}

}  // namespace

Selection select_algorithm(const Instance& instance) {
  const Flow& flow = instance.flow;
  std::vector<Value> values = flow.positive_values();
  std::vector<Colour> colours = flow.support_colours();
  if (flow.value() == 0) return {"circulation", true, {}};
  const bool clean = has_clean_terminals(flow);
  if (clean && values.size() == 1 && colours.size() <= 2) {
    return {"bichromatic-uniform", true, {}};
  }
  if (clean && values.size() == 2 && colours.size() == 2 &&
      values[1] % values[0] == 0) {
    // Each colour must carry a single value.
    std::vector<Colour> by_value[2];
    for (const Arc& arc : flow.network().arcs()) {
      Value x = flow[arc.id];
      if (x == 0) continue;
      auto& list = by_value[x == values[1] ? 1 : 0];
      if (std::find(list.begin(), list.end(), arc.colour) == list.end()) {
        list.push_back(arc.colour);
      }
    }
    if (by_value[0].size() == 1 && by_value[1].size() == 1 &&
        by_value[0][0] != by_value[1][0]) {
      return {"bichromatic-divisible", true, {}};
    }
  }
  if (clean && colours.size() == 1 && values.size() == 2) {
    const bool divisible = values[1] % values[0] == 0;
    const bool acyclic = support(flow, 1).is_acyclic();
    if (divisible || acyclic) return {"two-value", true, {}};
    return {"two-value", false,
            "flow support has a cycle and the values do not divide each "
            "other; the two-value decomposition is not known to be optimal"};
  }
  if (colours.size() == 1 && values.size() == 1) return {"uniform", true, {}};
  return {"exact", true, {}};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Minimum colour-cost decomposition of flows on arc-coloured "
               "networks.",
               "cfd"};
  app.footer(std::string("Environment:\n  ") + kNodeBudgetVariable +
             "  node budget of the exact solver (default " +
             std::to_string(ExactOptions{}.node_budget) + ")\n\n"
             "Exit status: 0 success, 1 answer no or invalid solution, "
             "2 usage or bad input, 3 node budget exhausted.");
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--format", settings.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", settings.seed,
                 "Seed for randomized generation (default 0)");

  std::string instance_path;
  std::string solution_path;
  std::optional<Value> k;

  auto* solve_cmd = app.add_subcommand(
      "solve", "Minimum-cost decomposition; picks a polynomial algorithm "
               "when one applies, else exact search");
  solve_cmd->add_option("instance", instance_path, "Instance file")
      ->required();
  auto* decide_cmd =
      app.add_subcommand("decide", "Is there a decomposition of cost <= k?");
  decide_cmd->add_option("--k", k, "Cost bound (default: the file's k line)");
  decide_cmd->add_option("instance", instance_path, "Instance file")
      ->required();
  auto* decompose_cmd = app.add_subcommand(
      "decompose", "Path and cycle decomposition with at most n + m parts");
  decompose_cmd->add_option("instance", instance_path, "Instance file")
      ->required();
  auto* greedy_cmd = app.add_subcommand(
      "greedy", "Repeatedly extract a maximum-bottleneck path");
  greedy_cmd->add_option("instance", instance_path, "Instance file")
      ->required();
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a solution against an instance");
  verify_cmd->add_option("instance", instance_path, "Instance file")
      ->required();
  verify_cmd->add_option("solution", solution_path, "Solution file")
      ->required();
  auto* info_cmd = app.add_subcommand(
      "info", "Colours, values, uniformity and acyclicity of an instance");
  info_cmd->add_option("instance", instance_path, "Instance file")->required();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "generate",
      "Emit an instance: 3partition, splittable, weak2linkage, 1in3sat, "
      "greedy-gap, fixture, random");
  gen_cmd->add_option("kind", gen.kind, "Generator")->required();
  gen_cmd->add_option("-o,--output", gen.output, "Write the instance here");
  gen_cmd->add_option("--witness", gen.witness_output,
                      "Write the certificate's witness solution here");
  gen_cmd->add_option("--values", gen.values, "3partition: comma list");
  gen_cmd->add_option("--T", gen.target, "3partition: bin size");
  gen_cmd->add_option("--base", gen.base, "splittable: base instance file");
  gen_cmd->add_option("--base-solution", gen.base_solution,
                      "splittable: base decomposition with <= k paths");
  gen_cmd->add_option("--q", gen.q, "splittable: colours (>= 2)");
  gen_cmd->add_option("--k", gen.k, "splittable: base path bound");
  gen_cmd->add_option("--vertices", gen.vertices,
                      "weak2linkage: vertex count; random: default 6");
  gen_cmd->add_option("--arcs", gen.arcs,
                      "weak2linkage: arcs as tail-head, comma separated");
  gen_cmd->add_option("--terminals", gen.terminals,
                      "weak2linkage: u1,u2,v1,v2");
  gen_cmd->add_flag("--degree-bounded", gen.degree_bounded,
                    "weak2linkage: separate two-arc bundles");
  gen_cmd->add_option("--clauses", gen.clauses,
                      "1in3sat: clauses 'a,b,c;d,e,f', negative = negated");
  gen_cmd->add_option("--lambda", gen.lambda, "Uniform flow value");
  gen_cmd->add_option("--n", gen.n, "greedy-gap: n; 1in3sat: variables");
  gen_cmd->add_option("--name", gen.name, "fixture: fig1 fig3 fig4 fig5 fig6 fig8");
  gen_cmd->add_option("--paths", gen.paths, "random: superposed paths");
  gen_cmd->add_option("--colours", gen.colours, "random: colour count");
  gen_cmd->add_option("--max-value", gen.max_value, "random: max path value");
  gen_cmd->add_option("--slack", gen.slack, "random: max spare capacity");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(instance_path, settings, out, err);
    if (*decide_cmd) return cmd_decide(instance_path, k, settings, out, err);
    if (*decompose_cmd) {
      return cmd_heuristic(instance_path, false, settings, out);
    }
    if (*greedy_cmd) return cmd_heuristic(instance_path, true, settings, out);
    if (*verify_cmd) {
      return cmd_verify(instance_path, solution_path, settings, out);
    }
    if (*info_cmd) return cmd_info(instance_path, settings, out);
    if (*gen_cmd) return cmd_generate(gen, settings, out);
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cfd::cli

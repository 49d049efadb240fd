#include "cfd/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace cfd {

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) {
      tokens.push_back({line.substr(start, i - start),
                        static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void syntax(int line, int column, std::string message) {
  throw ParseError(ParseErrorKind::kSyntax, line, column, std::move(message));
}

[[noreturn]] void semantic(int line, int column, std::string message) {
  throw ParseError(ParseErrorKind::kSemantic, line, column,
                   std::move(message));
}

Value integer(const Token& token, int line) {
  Value v = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    syntax(line, token.column,
           "expected an integer, got '" + std::string(token.text) + "'");
  }
  return v;
}

void expect_tokens(const std::vector<Token>& tokens, std::size_t count,
                   int line, std::string_view usage) {
  if (tokens.size() != count) {
    int column = tokens.size() > count ? tokens[count].column : 0;
    syntax(line, column, "expected '" + std::string(usage) + "'");
  }
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, int line, int column,
                       std::string message)
    : std::runtime_error(
          (kind == ParseErrorKind::kSyntax ? "syntax error" : "semantic error") +
          std::string(" at line ") + std::to_string(line) +
          (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
          message),
      kind_(kind),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

Instance parse_instance(std::string_view text) {
  struct Row {
    Value tail, head, capacity, flow, colour;
  };
  std::optional<Value> n;
  Value m = 0;
  std::optional<std::pair<Value, Value>> terminals;
  int terminal_line = 0;
  std::optional<Value> bound;
  std::vector<Row> rows;

  std::vector<std::string_view> lines = split_lines(text);
  for (std::size_t index = 0; index < lines.size(); ++index) {
    const int line = static_cast<int>(index) + 1;
    std::vector<Token> tokens = tokenize(lines[index]);
    if (tokens.empty() || tokens[0].text == "c") continue;
    std::string_view record = tokens[0].text;
    if (record == "p") {
      if (n) syntax(line, 1, "duplicate problem line");
      expect_tokens(tokens, 4, line, "p cfd <n> <m>");
      if (tokens[1].text != "cfd") {
        syntax(line, tokens[1].column, "expected problem type 'cfd'");
      }
      Value vertices = integer(tokens[2], line);
      m = integer(tokens[3], line);
      if (vertices < 2 || vertices > 10'000'000) {
        semantic(line, tokens[2].column, "vertex count must be in [2, 1e7]");
      }
      if (m < 0 || m > 100'000'000) {
        semantic(line, tokens[3].column, "arc count out of range");
      }
      n = vertices;
      continue;
    }
    if (record != "n" && record != "k" && record != "a") {
      syntax(line, 1, "unknown record type '" + std::string(record) + "'");
    }
    if (!n) syntax(line, 1, "missing problem line");
    auto vertex = [&](const Token& token) {
      Value v = integer(token, line);
      if (v < 1 || v > *n) {
        semantic(line, token.column,
                 "dangling vertex " + std::to_string(v) + " (n = " +
                     std::to_string(*n) + ")");
      }
      return v;
    };
    if (record == "n") {
      if (terminals) syntax(line, 1, "duplicate terminal line");
      expect_tokens(tokens, 3, line, "n <s> <t>");
      Value s = vertex(tokens[1]);
      Value t = vertex(tokens[2]);
      if (s == t) semantic(line, tokens[2].column, "source equals sink");
      terminals = {s, t};
      terminal_line = line;
    } else if (record == "k") {
      if (bound) syntax(line, 1, "duplicate bound line");
      expect_tokens(tokens, 2, line, "k <bound>");
      Value k = integer(tokens[1], line);
      if (k < 0) semantic(line, tokens[1].column, "bound must be nonnegative");
      bound = k;
    } else {
      expect_tokens(tokens, 6, line,
                    "a <tail> <head> <capacity> <flow> <colour>");
      if (static_cast<Value>(rows.size()) == m) {
        semantic(line, 1, "more arcs than the " + std::to_string(m) +
                              " declared");
      }
      Row row{vertex(tokens[1]), vertex(tokens[2]), integer(tokens[3], line),
              integer(tokens[4], line), integer(tokens[5], line)};
      if (row.tail == row.head) semantic(line, tokens[2].column, "self-loop");
      if (row.capacity < 0) {
        semantic(line, tokens[3].column, "negative capacity");
      }
      if (row.flow < 0) semantic(line, tokens[4].column, "negative flow");
      if (row.flow > row.capacity) {
        semantic(line, tokens[4].column,
                 "flow " + std::to_string(row.flow) + " exceeds capacity " +
                     std::to_string(row.capacity));
      }
      if (row.colour < 1 || row.colour > 2'000'000'000) {
        semantic(line, tokens[5].column, "colour must be a positive integer");
      }
      rows.push_back(row);
    }
  }

  const int last_line = std::max<int>(1, static_cast<int>(lines.size()));
  if (!n) syntax(last_line, 0, "missing problem line");
  if (!terminals) syntax(last_line, 0, "missing terminal line 'n <s> <t>'");
  if (static_cast<Value>(rows.size()) != m) {
    semantic(last_line, 0,
             "expected " + std::to_string(m) + " arcs, found " +
                 std::to_string(rows.size()));
  }

  ColouredNetwork::Builder builder(static_cast<int>(*n));
  std::vector<Value> values;
  values.reserve(rows.size());
  for (const Row& row : rows) {
    builder.add_arc(VertexId(static_cast<std::int32_t>(row.tail - 1)),
                    VertexId(static_cast<std::int32_t>(row.head - 1)),
                    row.capacity, static_cast<Colour>(row.colour));
    values.push_back(row.flow);
  }
  Flow flow(builder.build(), std::move(values),
            VertexId(static_cast<std::int32_t>(terminals->first - 1)),
            VertexId(static_cast<std::int32_t>(terminals->second - 1)));
  FlowReport report = validate_flow(flow);
  if (!report.ok()) semantic(terminal_line, 0, report.describe());
  return Instance{std::move(flow), bound};
}

std::string serialize_instance(const Instance& instance,
                               std::string_view comment) {
  const Flow& flow = instance.flow;
  const ColouredNetwork& net = flow.network();
  std::ostringstream out;
  if (!comment.empty()) {
    std::string flat(comment);
    for (char& c : flat) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    out << "c " << flat << '\n';
  }
  out << "p cfd " << net.vertex_count() << ' ' << net.arc_count() << '\n';
  out << "n " << flow.source().value() + 1 << ' ' << flow.sink().value() + 1
      << '\n';
  if (instance.bound) out << "k " << *instance.bound << '\n';
  for (const Arc& arc : net.arcs()) {
    out << "a " << arc.tail.value() + 1 << ' ' << arc.head.value() + 1 << ' '
        << arc.capacity << ' ' << flow[arc.id] << ' ' << arc.colour << '\n';
  }
  return out.str();
}

SolutionFile parse_solution(std::string_view text, const Instance& instance) {
  const Flow& flow = instance.flow;
  const ColouredNetwork& net = flow.network();
  std::vector<Value> unassigned(flow.values().begin(), flow.values().end());

  std::optional<std::array<Value, 3>> header;
  SolutionFile out;
  std::vector<std::string_view> lines = split_lines(text);
  for (std::size_t index = 0; index < lines.size(); ++index) {
    const int line = static_cast<int>(index) + 1;
    std::vector<Token> tokens = tokenize(lines[index]);
    if (tokens.empty() || tokens[0].text == "c") continue;
    std::string_view record = tokens[0].text;
    if (record == "s") {
      if (header) syntax(line, 1, "duplicate solution line");
      expect_tokens(tokens, 4, line, "s <cost> <num_paths> <num_cycles>");
      header = {integer(tokens[1], line), integer(tokens[2], line),
                integer(tokens[3], line)};
      continue;
    }
    if (record != "P" && record != "C") {
      syntax(line, 1, "unknown record type '" + std::string(record) + "'");
    }
    if (!header) syntax(line, 1, "missing solution line");
    const bool cycle = record == "C";
    if (tokens.size() < 2) syntax(line, 0, "missing value");
    Value value = integer(tokens[1], line);
    if (value <= 0) semantic(line, tokens[1].column, "value must be positive");

    std::vector<VertexId> walk;
    std::vector<std::pair<ArcId, int>> explicit_arcs;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const Token& token = tokens[i];
      if (token.text.front() == '@') {
        Token id{token.text.substr(1), token.column + 1};
        Value a = integer(id, line);
        if (a < 1 || a > net.arc_count()) {
          semantic(line, token.column, "unknown arc " + std::to_string(a));
        }
        explicit_arcs.push_back(
            {ArcId(static_cast<std::int32_t>(a - 1)), token.column});
        continue;
      }
      if (!explicit_arcs.empty()) {
        syntax(line, token.column, "vertex after arc list");
      }
      Value v = integer(token, line);
      if (v < 1 || v > net.vertex_count()) {
        semantic(line, token.column, "dangling vertex " + std::to_string(v));
      }
      walk.push_back(VertexId(static_cast<std::int32_t>(v - 1)));
    }
    const std::size_t minimum = cycle ? 3 : 2;
    if (walk.size() < minimum) {
      syntax(line, 0, cycle ? "cycle needs at least two arcs"
                            : "path needs at least two vertices");
    }
    if (cycle && walk.front() != walk.back()) {
      semantic(line, 0, "cycle must end at its first vertex");
    }
    if (!explicit_arcs.empty() && explicit_arcs.size() != walk.size() - 1) {
      syntax(line, explicit_arcs.front().second,
             "expected one @arc per hop");
    }

    std::vector<ArcId> arcs;
    for (std::size_t h = 0; h + 1 < walk.size(); ++h) {
      VertexId u = walk[h];
      VertexId v = walk[h + 1];
      if (!explicit_arcs.empty()) {
        auto [a, column] = explicit_arcs[h];
        const Arc& arc = net.arc(a);
        if (arc.tail != u || arc.head != v) {
          semantic(line, column,
                   "arc " + std::to_string(a.value() + 1) + " does not join " +
                       std::to_string(u.value() + 1) + " -> " +
                       std::to_string(v.value() + 1));
        }
        arcs.push_back(a);
        continue;
      }
      std::optional<ArcId> pick;
      std::optional<ArcId> fallback;
      for (ArcId a : net.out_arcs(u)) {
        if (net.arc(a).head != v) continue;
        if (!fallback) fallback = a;
        if (unassigned[a.index()] >= value) {
          pick = a;
          break;
        }
      }
      if (!pick) pick = fallback;
      if (!pick) {
        semantic(line, 0,
                 "no arc " + std::to_string(u.value() + 1) + " -> " +
                     std::to_string(v.value() + 1));
      }
      unassigned[pick->index()] -= value;
      arcs.push_back(*pick);
    }
    if (cycle) {
      out.decomposition.cycles.push_back({std::move(arcs), value});
    } else {
      out.decomposition.paths.push_back({std::move(arcs), value});
    }
  }
  if (!header) {
    syntax(std::max<int>(1, static_cast<int>(lines.size())), 0,
           "missing solution line");
  }
  const int last_line = static_cast<int>(lines.size());
  if ((*header)[1] != static_cast<Value>(out.decomposition.paths.size()) ||
      (*header)[2] != static_cast<Value>(out.decomposition.cycles.size())) {
    semantic(last_line, 0, "path/cycle counts differ from the solution line");
  }
  out.declared_cost = (*header)[0];
  out.decomposition = with_cost(net, std::move(out.decomposition));
  return out;
}

std::string serialize_solution(const ColouredNetwork& network,
                               const Decomposition& decomposition) {
  std::ostringstream out;
  out << "s " << decomposition_cost(network, decomposition) << ' '
      << decomposition.paths.size() << ' ' << decomposition.cycles.size()
      << '\n';
  auto emit = [&](char record, const std::vector<ArcId>& arcs, Value value) {
    out << record << ' ' << value;
    for (VertexId v : walk_vertices(network, arcs)) out << ' ' << v.value() + 1;
    for (ArcId a : arcs) out << " @" << a.value() + 1;
    out << '\n';
  };
  for (const PathFlow& p : decomposition.paths) emit('P', p.arcs, p.value);
  for (const CycleFlow& c : decomposition.cycles) emit('C', c.arcs, c.value);
  return out.str();
}

}  // namespace cfd

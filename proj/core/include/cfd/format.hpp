#pragma once

// Line-oriented text formats for instances and solutions.
//
// Instance:
//   c <comment>
//   p cfd <n> <m>
//   n <s> <t>
//   k <bound>                              (optional)
//   a <tail> <head> <capacity> <flow> <colour>   (m times)
//
// Solution:
//   s <cost> <num_paths> <num_cycles>
//   P <value> <v1> ... <vk> [@<arc> ...]
//   C <value> <v1> ... <vk> <v1> [@<arc> ...]
//
// Vertices and arcs are 1-indexed in files; arc ids follow the order of the
// `a` lines.

#include <stdexcept>
#include <string>
#include <string_view>

#include "cfd/network.hpp"

namespace cfd {

enum class ParseErrorKind { kSyntax, kSemantic };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, std::string message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }      // 1-based
  int column() const { return column_; }  // 1-based, 0 if not applicable
  const std::string& message() const { return message_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
  std::string message_;
};

// Parses and validates an instance: endpoints in range, flow within
// capacity, conservation. Throws ParseError.
Instance parse_instance(std::string_view text);

std::string serialize_instance(const Instance& instance,
                               std::string_view comment = {});

struct SolutionFile {
  Value declared_cost = 0;
  Decomposition decomposition;  // cost recomputed from the network
};

// Resolves a solution against its instance. Without @ tokens, each hop
// takes the lowest-id parallel arc that still has enough unassigned flow.
SolutionFile parse_solution(std::string_view text, const Instance& instance);

std::string serialize_solution(const ColouredNetwork& network,
                               const Decomposition& decomposition);

}  // namespace cfd

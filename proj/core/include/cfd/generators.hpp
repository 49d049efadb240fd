#pragma once

// Instance generators for the hardness reductions, the greedy-gap family
// and the worked-example fixtures. Each generated instance carries its
// decision threshold and, when one is known, a witness decomposition.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfd/exact.hpp"
#include "cfd/network.hpp"

namespace cfd {

struct Certificate {
  // Yes-instances are exactly those with optimum <= threshold under
  // `objective`.
  Value threshold = 0;
  CostMode objective = CostMode::kColours;
  std::optional<Decomposition> witness;
};

struct GeneratedInstance {
  Instance instance;  // instance.bound == certificate.threshold
  Certificate certificate;
  std::string provenance;
};

// 3-Partition: 3r values with T/4 < v < T/2 summing to rT. Vertices
// s, a_1..a_3r, q, b_1..b_r, t in that order. Threshold 6r.
GeneratedInstance gen_3partition(std::span<const Value> values, Value target);

// Adds q-1 unit detours s -> z_i -> t of colour i (i = 2..q) to a
// monochromatic base flow with values in {1, 2, 4}. Base arcs get colour 1
// and capacity equal to their flow. Threshold k + q - 1. A base
// decomposition into at most k paths yields the witness.
GeneratedInstance gen_from_splittable(
    const Flow& base, int q, Value k,
    const std::optional<Decomposition>& base_witness = std::nullopt);

struct Digraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> arcs;  // (tail, head), 0-based
};

struct LinkageQuery {
  Digraph graph;
  int u1 = 0;
  int u2 = 0;
  int v1 = 0;
  int v2 = 0;
};

struct LinkageOptions {
  Value lambda = 1;
  // Replace the s s1 s2 and t1 t2 t bundles by m-2 separate two-arc paths.
  bool degree_bounded = false;
};

// Weak 2-Linkage: base vertices keep their ids, followed by s, t, s1, s2,
// t1, t2 (or s, t, then s1^i, s2^i, t1^i, t2^i per i when degree
// bounded). Threshold 3m - 2.
GeneratedInstance gen_weak2linkage(const LinkageQuery& query,
                                   const LinkageOptions& options = {});

struct Literal {
  int variable = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};
using Clause = std::array<Literal, 3>;

struct Formula {
  int variable_count = 0;
  std::vector<Clause> clauses;
};

// 1-in-3SAT: vertices s, v_1..v_n, (c_j^s, c_j^t) per clause, t. The
// literal chains of variable i use colour i + 2. Threshold 4n.
GeneratedInstance gen_1in3sat(const Formula& formula, Value lambda = 1);

// The {1, 2, 4} chain family on 2n + 2 vertices for any n >= 1: a value-4
// chain s, v_1, ..., v_2n, t, value-2 arcs s -> v_(2i-1) and v_2i -> t, and
// two unit arcs v_(2i-1) -> v_2i. Monochromatic.
Flow greedy_gap_flow(int n);

// greedy_gap_flow(n) for n >= 3 with its n + 3 path witness; the
// threshold is a path count.
GeneratedInstance gen_greedy_gap(int n);

// Worked examples: fig1, fig3, fig4, fig5, fig6, fig8.
Instance fixture(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace cfd

#pragma once

// Random instance families and brute-force oracles shared by the tests.
// The oracles deliberately avoid the library's algorithms.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cfd/generators.hpp"
#include "cfd/network.hpp"

namespace cfd::testing {

using Rng = std::mt19937_64;

Value uniform(Rng& rng, Value lo, Value hi);

struct RandomFlowOptions {
  int max_vertices = 8;
  int max_paths = 5;
  int max_cycles = 2;
  int colours = 3;
  Value max_value = 5;
  Value max_slack = 2;
  // Reuse an existing parallel arc instead of adding a new one.
  double reuse = 0.5;
};

// Sizes the exact solver settles in milliseconds.
RandomFlowOptions small_flow_options();

// Superposed random simple paths and cycles; capacities exceed flows by a
// random slack. Cycles may pass through s and t.
Flow random_flow(Rng& rng, const RandomFlowOptions& options = {});

// lambda-uniform flow with colours in {1, 2}, clean terminals, at most
// max_vertices vertices. Each path or cycle gets fresh arcs.
Flow random_uniform_bichromatic(Rng& rng, int max_vertices, Value lambda);

// Acyclic monochromatic flow carrying both a and b (if they differ) and
// no other positive value.
Flow random_two_value_dag(Rng& rng, int max_vertices, Value a, Value b);

// Two colours: colour 1 arcs all carry v1 = k * v2, colour 2 arcs carry v2.
Flow random_divisible_bichromatic(Rng& rng, int max_vertices, Value v2,
                                  Value k);

// Monochromatic flow with values in {1, 2, 4} built from few paths.
Flow random_124_flow(Rng& rng, int max_vertices, int max_paths);

// Maximum flow value by enumerating every (s,t)-cut.
Value brute_force_min_cut(const ColouredNetwork& network, VertexId s,
                          VertexId t);

enum class Objective { kColours, kPaths };

// Exhaustive minimum over all decompositions: branches on every simple
// (s,t)-path and every value in [1, bottleneck] (or the bottleneck only).
// Requires clean terminals. Only for tiny instances.
Value brute_force_min_decomposition(const Flow& flow, Objective objective,
                                    bool bottleneck_only = false);

bool brute_force_3partition(const std::vector<Value>& values, Value target);

bool brute_force_weak_linkage(const LinkageQuery& query);

bool brute_force_1in3(const Formula& formula);

// Every simple path from `from` to `to` in a digraph, as arc indices.
std::vector<std::vector<int>> simple_paths(const Digraph& graph, int from,
                                           int to);

}  // namespace cfd::testing

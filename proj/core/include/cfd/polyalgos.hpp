#pragma once

// Polynomial-time solvers for the special cases of coloured flow
// decomposition: uniform flows, two flow values, and bichromatic networks.
//
// Every solver except decompose_uniform() computes maximum flows on
// sub-networks capped by x, which is only meaningful when no flow enters
// the source or leaves the sink. Such flows are rejected with InvalidInput.

#include <vector>

#include "cfd/network.hpp"

namespace cfd {

// True when no positive-flow arc enters the source or leaves the sink.
bool has_clean_terminals(const Flow& flow);

// Splits a lambda-uniform flow (every x in {0, lambda}) into exactly
// |x|/lambda arc-disjoint path flows of value lambda, plus circulation.
Decomposition decompose_uniform(const Flow& flow, Value lambda);

// Minimum-cardinality decomposition when every positive value is a or b,
// b divides a: p1 paths of value a from a maximum flow on support(x, a),
// then p2 paths of value b from what remains.
Decomposition decompose_two_values_divisible(const Flow& flow, Value a,
                                             Value b);

struct TwoValueTrace {
  // p[i] paths of value a_sequence[i] were extracted in iteration i.
  std::vector<Value> p;
  std::vector<Value> a_sequence;
  // Residual per-arc flow after each iteration.
  std::vector<std::vector<Value>> residuals;
  // The concrete paths (sum of p entries), plus any leftover circulation.
  Decomposition decomposition;

  Value total_paths() const;
};

// Euclid-style decomposition for two arbitrary values a >= b. Each round
// takes the support at threshold a, rounds capacities down to multiples of
// a, extracts a maximum flow as value-a paths, and continues with
// (a, b) <- (b, a mod b). A final round runs at the last a.
TwoValueTrace flow_decomposition_2v(const Flow& flow, Value a, Value b);

struct BichromaticResult {
  Colour colour1 = 0;  // 0 when the colour does not occur
  Colour colour2 = 0;
  Value p = 0;    // total number of value-lambda paths
  Value p1 = 0;   // monochromatic paths of colour1
  Value p2 = 0;   // monochromatic paths of colour2
  Value p12 = 0;  // bichromatic paths
  // Number of value-lambda copies each colour1 arc was split into; 1 for
  // uniform flows. p, p1, p2, p12 count paths in the split network.
  Value split_factor = 1;
  // p1 / split_factor + p2 + 2 * p12.
  Value cost = 0;
  Decomposition decomposition;
};

// Minimum colour cost of a lambda-uniform flow on a network whose support
// has at most two colours. colour1 < colour2.
BichromaticResult mincost_bichromatic_uniform(const Flow& flow, Value lambda);

// Minimum colour cost when arcs of one colour all carry v1, arcs of the
// other carry v2, and v2 divides v1. colour1 is the colour carrying v1.
// The witness lives on the original network, with colour1 monochromatic
// paths of value v1.
BichromaticResult mincost_bichromatic_divisible(const Flow& flow, Value v1,
                                                Value v2);

}  // namespace cfd

#pragma once

#include <string>

#include "graphseg/glasso.hpp"
#include "graphseg/types.hpp"

namespace graphseg {

// signed-sum is the plain sum of entry differences over all ordered pairs;
// opposite-signed edge changes can cancel there, which l1 avoids. l2 and
// frobenius are the same entrywise norm.
enum class GraphMetric { SignedSum, L1, L2, Frobenius };

GraphMetric parse_metric(const std::string& name);
std::string to_string(GraphMetric metric);

double graph_distance(const Matrix& a, const Matrix& b, GraphMetric metric);

// dg[b] = graph_distance(G_b, G_{b+1}), length B - 1. Requires B >= 2.
Vector first_order_sequence(const CIGraphSequence& graphs, GraphMetric metric);

// Core values |dg[b] - dg[b-1]| padded with one leading and one trailing
// zero, so the result lines up index-for-index with the B windows.
Vector second_order_sequence(const Vector& dg);

// Divides by the maximum entry; an all-zero signal is returned unchanged.
Vector normalize_signal(Vector d2g);

struct TrajectorySignal {
  Vector dg;        // length B - 1
  Vector d2g;       // length B, zero-padded
  Vector d2g_norm;  // length B, entries in [0, 1]
  GraphMetric metric = GraphMetric::SignedSum;
};

TrajectorySignal graph_trajectory(const CIGraphSequence& graphs,
                                  GraphMetric metric);

} // namespace graphseg

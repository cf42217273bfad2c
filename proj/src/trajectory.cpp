#include "graphseg/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace graphseg {

GraphMetric parse_metric(const std::string& name) {
  if (name == "signed-sum") return GraphMetric::SignedSum;
  if (name == "l1") return GraphMetric::L1;
  if (name == "l2") return GraphMetric::L2;
  if (name == "frobenius") return GraphMetric::Frobenius;
  throw std::invalid_argument("unknown metric '" + name +
                              "' (expected signed-sum, l1, l2 or frobenius)");
}

std::string to_string(GraphMetric metric) {
  switch (metric) {
    case GraphMetric::SignedSum: return "signed-sum";
    case GraphMetric::L1: return "l1";
    case GraphMetric::L2: return "l2";
    case GraphMetric::Frobenius: return "frobenius";
  }
  return "signed-sum";
}

double graph_distance(const Matrix& a, const Matrix& b, GraphMetric metric) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("graph_distance: shape mismatch");
  }
  switch (metric) {
    case GraphMetric::SignedSum: return (a - b).sum();
    case GraphMetric::L1: return (a - b).cwiseAbs().sum();
    case GraphMetric::L2:
    case GraphMetric::Frobenius: return (a - b).norm();
  }
  return 0.0;
}

Vector first_order_sequence(const CIGraphSequence& graphs, GraphMetric metric) {
  const Index b = graphs.batches();
  if (b < 2) {
    throw std::invalid_argument("first_order_sequence: need at least 2 graphs, got " +
                                std::to_string(b));
  }
  Vector dg(b - 1);
  for (Index i = 0; i + 1 < b; ++i) {
    dg[i] = graph_distance(graphs.graphs[static_cast<std::size_t>(i)],
                           graphs.graphs[static_cast<std::size_t>(i + 1)], metric);
  }
  return dg;
}

Vector second_order_sequence(const Vector& dg) {
  const Index n = dg.size();
  if (n < 2) {
    throw std::invalid_argument("second_order_sequence: need at least 2 first-order values, got " +
                                std::to_string(n));
  }
  Vector d2g = Vector::Zero(n + 1);  // one leading and one trailing zero pad
  for (Index i = 1; i < n; ++i) {
    d2g[i] = std::abs(dg[i] - dg[i - 1]);
  }
  return d2g;
}

Vector normalize_signal(Vector d2g) {
  const double peak = d2g.size() > 0 ? d2g.maxCoeff() : 0.0;
  if (peak > 0.0) d2g /= peak;
  return d2g;
}

TrajectorySignal graph_trajectory(const CIGraphSequence& graphs,
                                  GraphMetric metric) {
  TrajectorySignal signal;
  signal.metric = metric;
  signal.dg = first_order_sequence(graphs, metric);
  signal.d2g = second_order_sequence(signal.dg);
  signal.d2g_norm = normalize_signal(signal.d2g);
  return signal;
}

} // namespace graphseg

#pragma once

#include <Eigen/Dense>

namespace graphseg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace graphseg

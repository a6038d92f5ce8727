#pragma once

#include <Eigen/Dense>

namespace signet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace signet

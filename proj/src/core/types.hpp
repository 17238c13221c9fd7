#pragma once

#include <Eigen/Dense>
#include <complex>

namespace corrspec {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

}  // namespace corrspec

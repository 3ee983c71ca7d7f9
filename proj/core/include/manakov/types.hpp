#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace manakov {

using cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using MatR = Eigen::MatrixXd;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

}  // namespace manakov

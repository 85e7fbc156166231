#pragma once

#include <Eigen/Core>

namespace bivop {

struct TridiagEigen {
  Eigen::VectorXd values;            // ascending
  Eigen::VectorXd first_components;  // first entry of each normalized eigenvector
};

// Implicit-shift QL with Wilkinson shifts on a symmetric tridiagonal matrix.
// Only the first row of the eigenvector matrix is accumulated.
TridiagEigen symmetric_tridiagonal_ql(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag);

}  // namespace bivop

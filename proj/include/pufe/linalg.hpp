#pragma once

#include <Eigen/Dense>

namespace pufe {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

// Relative singular-value cutoff below which directions are treated as null.
inline constexpr double kSingularCutoff = 1e-10;

struct ThinSvd {
    Matrix left;       // n x k, orthonormal columns
    Vector singulars;  // k, nonincreasing, nonnegative
    Matrix right;      // d x k, orthonormal columns
};

/// Best rank-k factorization of m. Sign convention: the first nonzero entry
/// of each right-singular column is nonnegative.
ThinSvd thin_svd(const Matrix& m, Index k);

/// argmin_z ||target - design z||^2 + ridge ||z||^2. With ridge = 0 and a
/// rank-deficient design this is the minimum-norm solution.
Vector solve_least_squares(const Matrix& design, const Vector& target, double ridge = 0.0);

/// Euclidean projection onto the ball of the given radius.
Vector project_l2_ball(const Vector& w, double radius);

}  // namespace pufe

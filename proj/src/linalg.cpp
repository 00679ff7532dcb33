#include "pufe/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pufe {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

ThinSvd thin_svd(const Matrix& m, Index k) {
    if (k < 1 || k > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("thin_svd: k out of range");
    if (!m.allFinite())
        throw std::invalid_argument("thin_svd: non-finite entries");

    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ThinSvd out;
    out.left = svd.matrixU().leftCols(k);
    out.singulars = svd.singularValues().head(k);
    out.right = svd.matrixV().leftCols(k);

    // Fix signs so fixtures are reproducible: leading nonzero of each right
    // column made nonnegative, left column flipped to match.
    for (Index j = 0; j < k; ++j) {
        for (Index i = 0; i < out.right.rows(); ++i) {
            const double v = out.right(i, j);
            if (v != 0.0) {
                if (v < 0.0) {
                    out.right.col(j) = -out.right.col(j);
                    out.left.col(j) = -out.left.col(j);
                }
                break;
            }
        }
    }
    return out;
}

Vector solve_least_squares(const Matrix& design, const Vector& target, double ridge) {
    if (design.rows() != target.size())
        throw std::invalid_argument("solve_least_squares: row count mismatch");
    if (ridge < 0.0)
        throw std::invalid_argument("solve_least_squares: negative ridge");
    if (!design.allFinite() || !target.allFinite())
        throw std::invalid_argument("solve_least_squares: non-finite entries");

    Eigen::BDCSVD<Matrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    Vector coeffs = svd.matrixU().transpose() * target;
    const double cutoff = sigma.size() > 0 ? kSingularCutoff * sigma(0) : 0.0;
    for (Index i = 0; i < sigma.size(); ++i) {
        const double s = sigma(i);
        if (ridge > 0.0)
            coeffs(i) *= s / (s * s + ridge);
        else if (s > cutoff && s > 0.0)
            coeffs(i) /= s;
        else
            coeffs(i) = 0.0;
    }
    return svd.matrixV() * coeffs;
}

Vector project_l2_ball(const Vector& w, double radius) {
    if (radius <= 0.0)
        throw std::invalid_argument("project_l2_ball: radius must be positive");
    if (!w.allFinite())
        throw std::invalid_argument("project_l2_ball: non-finite entries");
    const double norm = w.norm();
    if (norm <= radius) return w;
    return w * (radius / norm);
}

}  // namespace pufe

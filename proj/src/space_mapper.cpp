#include "pufe/space_mapper.hpp"

#include <stdexcept>

namespace pufe {

namespace {
constexpr double kMaxCondition = 1e12;
constexpr double kRidgeFloor = 1e-10;
}

MappingAccumulator::MappingAccumulator(Index current_dim, Index previous_dim) {
    if (current_dim < 1 || previous_dim < 1)
        throw std::invalid_argument("MappingAccumulator: dimensions must be >= 1");
    gram_ = Matrix::Zero(current_dim, current_dim);
    cross_ = Matrix::Zero(current_dim, previous_dim);
}

void MappingAccumulator::accumulate(const Vector& current, const Vector& previous) {
    if (current.size() != gram_.rows() || previous.size() != cross_.cols())
        throw std::invalid_argument("MappingAccumulator::accumulate: dimension mismatch");
    if (!current.allFinite() || !previous.allFinite())
        throw std::invalid_argument("MappingAccumulator::accumulate: non-finite entries");
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(current);
    gram_.triangularView<Eigen::StrictlyUpper>() =
        gram_.triangularView<Eigen::StrictlyLower>().transpose();
    cross_ += current * previous.transpose();
    ++pairs_;
}

MappingMatrix mapper_finalize(const MappingAccumulator& acc, double ridge) {
    if (acc.pairs_seen() < 1)
        throw std::invalid_argument("mapper_finalize: no pairs accumulated");
    if (ridge < 0.0) throw std::invalid_argument("mapper_finalize: negative ridge");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(acc.gram());
    const Vector& evals = eig.eigenvalues();  // ascending
    const double lo = std::max(evals(0), 0.0);
    const double hi = std::max(evals(evals.size() - 1), 0.0);

    double lambda = ridge;
    auto conditioned = [&](double l) {
        return l > 0.0 ? (hi + l) <= kMaxCondition * (lo + l) : (lo > 0.0 && hi <= kMaxCondition * lo);
    };
    if (!conditioned(lambda)) {
        lambda = std::max(lambda, kRidgeFloor);
        while (!conditioned(lambda)) lambda *= 10.0;
    }

    Vector inv_evals(evals.size());
    for (Index i = 0; i < evals.size(); ++i) inv_evals(i) = 1.0 / (evals(i) + lambda);
    MappingMatrix out;
    out.map = eig.eigenvectors() * inv_evals.asDiagonal() *
              (eig.eigenvectors().transpose() * acc.cross());
    out.ridge_used = lambda;
    return out;
}

Vector mapper_recover(const MappingMatrix& mapping, const Vector& current) {
    if (current.size() != mapping.map.rows())
        throw std::invalid_argument("mapper_recover: dimension mismatch");
    return mapping.map.transpose() * current;
}

}  // namespace pufe

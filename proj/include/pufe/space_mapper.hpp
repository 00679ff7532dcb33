#pragma once

#include <cstdint>

#include "pufe/linalg.hpp"

namespace pufe {

/// Streaming sufficient statistics for the linear map from the current
/// feature space (dim d2) to the previous one (dim d1).
class MappingAccumulator {
public:
    MappingAccumulator(Index current_dim, Index previous_dim);

    /// gram += c c^T, cross += c p^T.
    void accumulate(const Vector& current, const Vector& previous);

    const Matrix& gram() const { return gram_; }    // d2 x d2
    const Matrix& cross() const { return cross_; }  // d2 x d1
    std::int64_t pairs_seen() const { return pairs_; }

private:
    Matrix gram_;
    Matrix cross_;
    std::int64_t pairs_ = 0;
};

struct MappingMatrix {
    Matrix map;  // d2 x d1
    double ridge_used = 0.0;
};

/// map = (gram + lambda I)^-1 cross; lambda escalates from the requested
/// ridge (x10 starting at 1e-10) until the condition number is <= 1e12.
MappingMatrix mapper_finalize(const MappingAccumulator& acc, double ridge = 0.0);

/// map^T c: the previous-space image of a current-space instance.
Vector mapper_recover(const MappingMatrix& mapping, const Vector& current);

}  // namespace pufe

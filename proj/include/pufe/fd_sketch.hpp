#pragma once

#include <algorithm>
#include <cstdint>

#include "pufe/linalg.hpp"

namespace pufe {

/// Orthonormal basis of a row space: `basis` is dim x rank with
/// ||basis^T basis - I||_max < 1e-8.
struct RowSpaceBasis {
    Index dim = 0;
    Index rank = 0;
    Matrix basis;
};

/// One-pass Frequent Directions sketch. The buffer Gram matrix B^T B
/// underestimates the stream Gram A^T A by at most ||A||_F^2 / (l - k)
/// in spectral norm, for every k < l.
class FrequentDirectionsSketch {
public:
    FrequentDirectionsSketch(Index sketch_rows, Index dim);

    /// Places the row in a free buffer slot, shrinking first when none is left.
    void insert(const Vector& row);

    /// Top-r right singular directions of the buffer.
    RowSpaceBasis row_space(Index r) const;

    /// Number of buffer singular values above rel_tol * sigma_max.
    Index estimate_rank(double rel_tol = kDefaultRankTol) const;

    const Matrix& buffer() const { return buffer_; }
    Index sketch_rows() const { return buffer_.rows(); }
    Index dim() const { return buffer_.cols(); }
    std::int64_t rows_seen() const { return rows_seen_; }

    /// Default buffer size for a target rank r.
    static Index default_sketch_rows(Index r) { return std::max<Index>(2 * r, r + 4); }

    static constexpr double kDefaultRankTol = 1e-8;

private:
    void shrink();

    Matrix buffer_;            // sketch_rows x dim; rows [filled_, end) are zero
    Index filled_ = 0;
    std::int64_t rows_seen_ = 0;
};

}  // namespace pufe

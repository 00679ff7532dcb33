#include "pufe/fd_sketch.hpp"

#include <cmath>
#include <stdexcept>

namespace pufe {

FrequentDirectionsSketch::FrequentDirectionsSketch(Index sketch_rows, Index dim) {
    if (sketch_rows < 2)
        throw std::invalid_argument("FrequentDirectionsSketch: sketch_rows must be >= 2");
    if (dim < 1)
        throw std::invalid_argument("FrequentDirectionsSketch: dim must be >= 1");
    buffer_ = Matrix::Zero(sketch_rows, dim);
}

void FrequentDirectionsSketch::insert(const Vector& row) {
    if (row.size() != buffer_.cols())
        throw std::invalid_argument("FrequentDirectionsSketch::insert: dimension mismatch");
    if (!row.allFinite())
        throw std::invalid_argument("FrequentDirectionsSketch::insert: non-finite entries");
    if (filled_ == buffer_.rows()) shrink();
    buffer_.row(filled_++) = row.transpose();
    ++rows_seen_;
}

void FrequentDirectionsSketch::shrink() {
    const Index l = buffer_.rows();
    const Index m = std::min(l, buffer_.cols());
    Eigen::BDCSVD<Matrix> svd(buffer_, Eigen::ComputeThinV);
    Vector sigma = svd.singularValues();
    // With l <= d the buffer has l singular values and the l-th one drives the
    // shrink; with l > d there are only d, so the implicit l-th value is zero
    // and the rebuild is a pure rotation that still frees l - d slots.
    const double delta = (m == l) ? sigma(l - 1) * sigma(l - 1) : 0.0;
    buffer_.setZero();
    filled_ = 0;
    for (Index i = 0; i < m; ++i) {
        const double s2 = sigma(i) * sigma(i) - delta;
        if (s2 <= 0.0) break;
        buffer_.row(filled_++) = std::sqrt(s2) * svd.matrixV().col(i).transpose();
    }
}

RowSpaceBasis FrequentDirectionsSketch::row_space(Index r) const {
    if (r < 1 || r > std::min(buffer_.rows(), buffer_.cols()))
        throw std::invalid_argument("FrequentDirectionsSketch::row_space: r out of range");
    ThinSvd svd = thin_svd(buffer_, r);
    RowSpaceBasis basis;
    basis.dim = buffer_.cols();
    basis.rank = r;
    basis.basis = std::move(svd.right);
    return basis;
}

Index FrequentDirectionsSketch::estimate_rank(double rel_tol) const {
    Eigen::BDCSVD<Matrix> svd(buffer_);
    const Vector& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    Index rank = 0;
    for (Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > rel_tol * sigma(0)) ++rank;
    return rank;
}

}  // namespace pufe

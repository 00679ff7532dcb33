#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pufe/fd_sketch.hpp"

namespace pufe {

/// A partially observed row: the surviving coordinates and their values.
struct ObservedRow {
    Index dim = 0;
    std::vector<Index> indices;  // strictly increasing, each in [0, dim)
    std::vector<double> values;  // aligned with indices

    static ObservedRow dense(const Vector& row);
    Vector to_dense(double fill = 0.0) const;
    void validate() const;
};

struct CompletionConfig {
    Index rank = 1;
    double confidence = 0.1;  // delta in (0,1)
    Index min_entries = 1;    // rows with fewer observed entries are discarded
    double ridge = 0.0;
};

struct CompletionReport {
    Matrix completed;  // one row per kept id, in arrival order
    std::vector<Index> kept_row_ids;
    std::vector<Index> discarded_row_ids;
    std::vector<Index> ill_posed_row_ids;  // kept rows whose subproblem was near-singular
};

/// max_i (n/r) ||basis_(i)||^2 for an orthonormal n x r factor. The full
/// measure maximizes this over both factors; callers take the max themselves.
double incoherence(const Matrix& basis);

/// ceil(7 mu r ln(log_factor * r b / delta)) observed entries per row.
Index required_samples(double mu, Index r, Index b, double delta, double log_factor = 1.0);

struct RowRecovery {
    Vector row;
    bool ill_posed = false;
};

/// Least-squares fit of the observed entries against the selected basis rows,
/// lifted back through the basis. Near-singular subproblems with ridge = 0
/// fall back to a tiny ridge and are flagged.
RowRecovery recover_row_detailed(const ObservedRow& obs, const RowSpaceBasis& basis,
                                 double ridge = 0.0);
Vector recover_row(const ObservedRow& obs, const RowSpaceBasis& basis, double ridge = 0.0);

/// Pull-based row source; returns nullopt when the stream ends.
using RowSource = std::function<std::optional<ObservedRow>()>;

/// One pass over the rows: each is recovered or discarded on arrival.
CompletionReport complete_stream(const RowSource& next_row, const RowSpaceBasis& basis,
                                 const CompletionConfig& cfg);
CompletionReport complete_stream(const std::vector<ObservedRow>& rows, const RowSpaceBasis& basis,
                                 const CompletionConfig& cfg);

}  // namespace pufe

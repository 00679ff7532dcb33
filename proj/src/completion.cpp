#include "pufe/completion.hpp"

#include <cmath>
#include <stdexcept>

namespace pufe {

namespace {
constexpr double kOrthoTol = 1e-6;
constexpr double kMaxCondition = 1e12;
constexpr double kFallbackRidge = 1e-10;

void require_orthonormal(const Matrix& basis, double tol) {
    const Matrix gram = basis.transpose() * basis;
    const double resid =
        (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (resid > tol)
        throw std::invalid_argument("incoherence: basis columns are not orthonormal");
}
}  // namespace

ObservedRow ObservedRow::dense(const Vector& row) {
    ObservedRow out;
    out.dim = row.size();
    out.indices.resize(row.size());
    out.values.resize(row.size());
    for (Index i = 0; i < row.size(); ++i) {
        out.indices[i] = i;
        out.values[i] = row(i);
    }
    return out;
}

Vector ObservedRow::to_dense(double fill) const {
    Vector out = Vector::Constant(dim, fill);
    for (std::size_t k = 0; k < indices.size(); ++k) out(indices[k]) = values[k];
    return out;
}

void ObservedRow::validate() const {
    if (indices.size() != values.size())
        throw std::invalid_argument("ObservedRow: indices/values length mismatch");
    Index prev = -1;
    for (Index idx : indices) {
        if (idx <= prev || idx >= dim)
            throw std::invalid_argument("ObservedRow: indices must be strictly increasing in [0, dim)");
        prev = idx;
    }
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("ObservedRow: non-finite value");
}

double incoherence(const Matrix& basis) {
    require_orthonormal(basis, kOrthoTol);
    const Index n = basis.rows();
    const Index r = basis.cols();
    double max_row_sq = 0.0;
    for (Index i = 0; i < n; ++i)
        max_row_sq = std::max(max_row_sq, basis.row(i).squaredNorm());
    return static_cast<double>(n) / static_cast<double>(r) * max_row_sq;
}

Index required_samples(double mu, Index r, Index b, double delta, double log_factor) {
    if (mu < 1.0) throw std::invalid_argument("required_samples: mu must be >= 1");
    if (r < 1 || b < 1) throw std::invalid_argument("required_samples: r and b must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("required_samples: delta must lie in (0,1)");
    const double arg = log_factor * static_cast<double>(r) * static_cast<double>(b) / delta;
    return static_cast<Index>(std::ceil(7.0 * mu * static_cast<double>(r) * std::log(arg)));
}

RowRecovery recover_row_detailed(const ObservedRow& obs, const RowSpaceBasis& basis,
                                 double ridge) {
    obs.validate();
    if (obs.dim != basis.dim)
        throw std::invalid_argument("recover_row: dimension mismatch with basis");
    if (obs.indices.empty())
        throw std::invalid_argument("recover_row: empty observation set");
    if (ridge < 0.0) throw std::invalid_argument("recover_row: negative ridge");

    const Index s = static_cast<Index>(obs.indices.size());
    const Index r = basis.rank;
    Matrix selected(s, r);
    Vector rhs(s);
    for (Index k = 0; k < s; ++k) {
        selected.row(k) = basis.basis.row(obs.indices[k]);
        rhs(k) = obs.values[k];
    }

    RowRecovery out;
    double effective_ridge = ridge;
    if (ridge == 0.0) {
        Eigen::BDCSVD<Matrix> svd(selected);
        const Vector& sigma = svd.singularValues();
        const double smax = sigma(0);
        const double smin = sigma(sigma.size() - 1);
        // Condition of the normal matrix is (smax/smin)^2.
        if (s < r || smax == 0.0 || smin * smin * kMaxCondition < smax * smax) {
            effective_ridge = kFallbackRidge;
            out.ill_posed = true;
        }
    }
    const Vector z = solve_least_squares(selected, rhs, effective_ridge);
    out.row = basis.basis * z;
    return out;
}

Vector recover_row(const ObservedRow& obs, const RowSpaceBasis& basis, double ridge) {
    return recover_row_detailed(obs, basis, ridge).row;
}

CompletionReport complete_stream(const RowSource& next_row, const RowSpaceBasis& basis,
                                 const CompletionConfig& cfg) {
    if (cfg.min_entries < 1)
        throw std::invalid_argument("complete_stream: min_entries must be >= 1");
    CompletionReport report;
    std::vector<Vector> kept;
    Index row_id = 0;
    while (auto obs = next_row()) {
        if (obs->dim != basis.dim)
            throw std::invalid_argument("complete_stream: row dimension mismatch");
        if (static_cast<Index>(obs->indices.size()) >= cfg.min_entries) {
            RowRecovery rec = recover_row_detailed(*obs, basis, cfg.ridge);
            if (rec.ill_posed) report.ill_posed_row_ids.push_back(row_id);
            report.kept_row_ids.push_back(row_id);
            kept.push_back(std::move(rec.row));
        } else {
            report.discarded_row_ids.push_back(row_id);
        }
        ++row_id;
    }
    report.completed.resize(static_cast<Index>(kept.size()), basis.dim);
    for (std::size_t i = 0; i < kept.size(); ++i)
        report.completed.row(static_cast<Index>(i)) = kept[i].transpose();
    return report;
}

CompletionReport complete_stream(const std::vector<ObservedRow>& rows, const RowSpaceBasis& basis,
                                 const CompletionConfig& cfg) {
    std::size_t pos = 0;
    return complete_stream(
        [&rows, &pos]() -> std::optional<ObservedRow> {
            if (pos == rows.size()) return std::nullopt;
            return rows[pos++];
        },
        basis, cfg);
}

}  // namespace pufe

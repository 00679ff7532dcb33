#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pufe/linalg.hpp"

namespace pufe {

/// Phi(R, S) = exp(max{0,R}^2 / (3S)), with Phi(., 0) = 1.
double potential(double regret, double magnitude);

/// w(R, S) = (Phi(R+1, S+1) - Phi(R-1, S+1)) / 2. Nonnegative.
double hedge_weight(double regret, double magnitude);

/// Dot product of a probability vector with base predictions.
double combine(const Vector& alphas, const Vector& preds);

struct ExpertRecord {
    std::string id;
    double regret = 0.0;     // R: running sum of (combined loss - own loss)
    double magnitude = 0.0;  // S: running sum of |combined loss - own loss|
    double confidence = 0.0; // I in [0, 1]; 0 means asleep
};

/// Parameter-free expert aggregation with confidence-weighted (sleeping)
/// experts. Single-writer; snapshots are plain copies.
class EnsembleState {
public:
    /// New experts join asleep with zero regret history.
    void register_expert(const std::string& id);
    void set_confidence(Index expert, double confidence);
    Index find(const std::string& id) const;  // -1 when absent

    /// alpha_i proportional to I_i * w(R_i, S_i); uniform fallback when the
    /// total weight vanishes. Asleep experts get exactly zero.
    Vector compute_alphas() const;

    /// R_i += combined - loss_i, S_i += |combined - loss_i| for awake experts;
    /// asleep experts are untouched. All losses must lie in [0, 1].
    void update(const Vector& unit_losses, double combined_loss);

    /// sqrt(3 (u.S) (ln N + ln B + ln(1 + ln N))) with
    /// B = 1 + (3/2) sum_i (1 + ln(1 + S_i)).
    double regret_bound(const Vector& u) const;

    const std::vector<ExpertRecord>& experts() const { return experts_; }
    Index size() const { return static_cast<Index>(experts_.size()); }
    std::int64_t rounds_played() const { return rounds_; }

private:
    std::vector<ExpertRecord> experts_;
    std::int64_t rounds_ = 0;
};

}  // namespace pufe

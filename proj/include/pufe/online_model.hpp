#pragma once

#include <cstdint>

#include "pufe/linalg.hpp"

namespace pufe {

enum class LossKind { logistic, square };

/// logistic: ln(1 + exp(-y p)) with y in {-1, +1}; square: (y - p)^2.
double loss(LossKind kind, double p, double y);

/// Gradient with respect to w of loss(kind, w.x, y).
Vector loss_gradient(LossKind kind, const Vector& w, const Vector& x, double y);

/// min(loss, cap) / cap, always in [0, 1].
double unit_loss(LossKind kind, double p, double y, double cap);

enum class StepMode { inverse_sqrt_global, inverse_sqrt_phase };

struct StepSchedule {
    double scale = 1.0;  // the c in 1/(c sqrt(t))
    StepMode mode = StepMode::inverse_sqrt_global;
};

/// global: 1/(c sqrt(t)); phase: 1/(c sqrt(t - phase_start)).
double step_size(const StepSchedule& schedule, std::int64_t t, std::int64_t phase_start = 0);

/// Linear predictor constrained to an L2 ball, updated by projected
/// gradient steps.
class OnlineLinearModel {
public:
    OnlineLinearModel(Index dim, double radius);

    /// Start uniformly inside the ball, shrunk by init_scale. Seeded.
    static OnlineLinearModel random_on_ball(Index dim, double radius, std::uint64_t seed,
                                            double init_scale = 0.01);

    double predict(const Vector& x) const { return weights_.dot(x); }

    /// w <- project(w - tau * grad loss(w.x, y))
    void step(LossKind kind, const Vector& x, double y, double tau);

    const Vector& weights() const { return weights_; }
    double radius() const { return radius_; }
    std::int64_t updates_applied() const { return updates_; }

private:
    Vector weights_;
    double radius_;
    std::int64_t updates_ = 0;
};

}  // namespace pufe

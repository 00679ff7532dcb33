#include "pufe/online_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pufe {

namespace {
void require_binary_label(double y) {
    if (y != 1.0 && y != -1.0)
        throw std::invalid_argument("logistic loss: label must be -1 or +1");
}

// ln(1 + exp(z)) without overflow.
double log1p_exp(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}
}  // namespace

double loss(LossKind kind, double p, double y) {
    switch (kind) {
        case LossKind::logistic:
            require_binary_label(y);
            return log1p_exp(-y * p);
        case LossKind::square: {
            const double r = y - p;
            return r * r;
        }
    }
    throw std::invalid_argument("loss: unknown kind");
}

Vector loss_gradient(LossKind kind, const Vector& w, const Vector& x, double y) {
    if (w.size() != x.size())
        throw std::invalid_argument("loss_gradient: dimension mismatch");
    const double p = w.dot(x);
    switch (kind) {
        case LossKind::logistic: {
            require_binary_label(y);
            // -y * sigmoid(-y p) = -y / (1 + exp(y p)), evaluated stably.
            const double a = y * p;
            double s;
            if (a >= 0.0) {
                const double e = std::exp(-a);
                s = e / (1.0 + e);
            } else {
                s = 1.0 / (1.0 + std::exp(a));
            }
            return (-y * s) * x;
        }
        case LossKind::square:
            return (2.0 * (p - y)) * x;
    }
    throw std::invalid_argument("loss_gradient: unknown kind");
}

double unit_loss(LossKind kind, double p, double y, double cap) {
    if (cap <= 0.0) throw std::invalid_argument("unit_loss: cap must be positive");
    return std::min(loss(kind, p, y), cap) / cap;
}

double step_size(const StepSchedule& schedule, std::int64_t t, std::int64_t phase_start) {
    if (schedule.scale <= 0.0) throw std::invalid_argument("step_size: scale must be positive");
    switch (schedule.mode) {
        case StepMode::inverse_sqrt_global:
            if (t < 1) throw std::invalid_argument("step_size: t must be >= 1");
            return 1.0 / (schedule.scale * std::sqrt(static_cast<double>(t)));
        case StepMode::inverse_sqrt_phase:
            if (t <= phase_start)
                throw std::invalid_argument("step_size: t must exceed phase_start in phase mode");
            return 1.0 / (schedule.scale * std::sqrt(static_cast<double>(t - phase_start)));
    }
    throw std::invalid_argument("step_size: unknown mode");
}

OnlineLinearModel::OnlineLinearModel(Index dim, double radius)
    : weights_(Vector::Zero(dim)), radius_(radius) {
    if (dim < 1) throw std::invalid_argument("OnlineLinearModel: dim must be >= 1");
    if (radius <= 0.0) throw std::invalid_argument("OnlineLinearModel: radius must be positive");
}

OnlineLinearModel OnlineLinearModel::random_on_ball(Index dim, double radius, std::uint64_t seed,
                                                    double init_scale) {
    OnlineLinearModel model(dim, radius);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector direction(dim);
    for (Index i = 0; i < dim; ++i) direction(i) = gauss(rng);
    const double norm = direction.norm();
    if (norm > 0.0) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double r = std::pow(unif(rng), 1.0 / static_cast<double>(dim));
        model.weights_ = direction * (radius * init_scale * r / norm);
    }
    return model;
}

void OnlineLinearModel::step(LossKind kind, const Vector& x, double y, double tau) {
    if (tau < 0.0) throw std::invalid_argument("OnlineLinearModel::step: negative step size");
    weights_ = project_l2_ball(weights_ - tau * loss_gradient(kind, weights_, x, y), radius_);
    ++updates_;
}

}  // namespace pufe

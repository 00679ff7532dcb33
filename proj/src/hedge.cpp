#include "pufe/hedge.hpp"

#include <cmath>
#include <stdexcept>

namespace pufe {

double potential(double regret, double magnitude) {
    if (magnitude < 0.0) throw std::invalid_argument("potential: negative magnitude");
    if (magnitude == 0.0) return 1.0;
    const double r = std::max(0.0, regret);
    return std::exp(r * r / (3.0 * magnitude));
}

double hedge_weight(double regret, double magnitude) {
    if (magnitude < 0.0) throw std::invalid_argument("hedge_weight: negative magnitude");
    return 0.5 * (potential(regret + 1.0, magnitude + 1.0) -
                  potential(regret - 1.0, magnitude + 1.0));
}

double combine(const Vector& alphas, const Vector& preds) {
    if (alphas.size() != preds.size())
        throw std::invalid_argument("combine: length mismatch");
    if (std::abs(alphas.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("combine: alphas must sum to 1");
    return alphas.dot(preds);
}

void EnsembleState::register_expert(const std::string& id) {
    if (find(id) >= 0) throw std::invalid_argument("register_expert: duplicate id: " + id);
    ExpertRecord rec;
    rec.id = id;
    experts_.push_back(std::move(rec));
}

void EnsembleState::set_confidence(Index expert, double confidence) {
    if (expert < 0 || expert >= size())
        throw std::invalid_argument("set_confidence: expert index out of range");
    if (!(confidence >= 0.0 && confidence <= 1.0))
        throw std::invalid_argument("set_confidence: confidence must lie in [0, 1]");
    experts_[static_cast<std::size_t>(expert)].confidence = confidence;
}

Index EnsembleState::find(const std::string& id) const {
    for (std::size_t i = 0; i < experts_.size(); ++i)
        if (experts_[i].id == id) return static_cast<Index>(i);
    return -1;
}

Vector EnsembleState::compute_alphas() const {
    if (experts_.empty()) throw std::invalid_argument("compute_alphas: no experts");
    const Index n = size();
    Vector alphas = Vector::Zero(n);
    // Asleep experts are skipped outright so that adding one never perturbs
    // the floating-point sum for the others.
    double total = 0.0;
    Index awake = 0;
    for (Index i = 0; i < n; ++i) {
        const ExpertRecord& e = experts_[static_cast<std::size_t>(i)];
        if (e.confidence <= 0.0) continue;
        ++awake;
        const double wi = e.confidence * hedge_weight(e.regret, e.magnitude);
        alphas(i) = wi;
        total += wi;
    }
    if (total > 0.0) {
        alphas /= total;
    } else if (awake > 0) {
        for (Index i = 0; i < n; ++i)
            if (experts_[static_cast<std::size_t>(i)].confidence > 0.0)
                alphas(i) = 1.0 / static_cast<double>(awake);
    } else {
        alphas.setConstant(1.0 / static_cast<double>(n));
    }
    return alphas;
}

void EnsembleState::update(const Vector& unit_losses, double combined_loss) {
    if (unit_losses.size() != size())
        throw std::invalid_argument("ensemble update: loss vector length mismatch");
    if (!(combined_loss >= 0.0 && combined_loss <= 1.0))
        throw std::invalid_argument("ensemble update: combined loss outside [0, 1]");
    for (Index i = 0; i < unit_losses.size(); ++i) {
        const double li = unit_losses(i);
        if (!(li >= 0.0 && li <= 1.0))
            throw std::invalid_argument("ensemble update: expert loss outside [0, 1]");
    }
    for (Index i = 0; i < size(); ++i) {
        ExpertRecord& e = experts_[static_cast<std::size_t>(i)];
        if (e.confidence <= 0.0) continue;  // asleep rounds contribute zero regret
        const double r = combined_loss - unit_losses(i);
        e.regret += r;
        e.magnitude += std::abs(r);
    }
    ++rounds_;
}

double EnsembleState::regret_bound(const Vector& u) const {
    if (u.size() != size())
        throw std::invalid_argument("regret_bound: distribution length mismatch");
    double sum = 0.0;
    for (Index i = 0; i < u.size(); ++i) {
        if (u(i) < -1e-12) throw std::invalid_argument("regret_bound: negative mass");
        sum += u(i);
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("regret_bound: distribution must sum to 1");

    const double n = static_cast<double>(size());
    double u_dot_s = 0.0;
    double b = 1.0;
    for (Index i = 0; i < size(); ++i) {
        const double s = experts_[static_cast<std::size_t>(i)].magnitude;
        u_dot_s += u(i) * s;
        b += 1.5 * (1.0 + std::log1p(s));
    }
    return std::sqrt(3.0 * u_dot_s * (std::log(n) + std::log(b) + std::log(1.0 + std::log(n))));
}

}  // namespace pufe

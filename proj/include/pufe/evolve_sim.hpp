#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pufe/completion.hpp"

namespace pufe {

/// Deterministic stream splitter for derived seeds (splitmix64 over a mix).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Timeline of a feature-evolvable stream. Rounds 1..t1-b carry old features
/// only, rounds t1-b+1..t1 carry both, rounds t1+1..t1+t2 carry new features
/// only. vanish_round[j] = t1+1 means feature j survives the whole overlap.
struct EvolutionScript {
    std::int64_t t1 = 0;
    std::int64_t overlap = 0;  // b
    std::int64_t t2 = 0;
    Index old_dim = 0;  // d1
    Index new_dim = 0;  // d2
    std::vector<std::int64_t> vanish_round;
    std::uint64_t seed = 0;
    double noise_std = 0.0;  // additive noise on mapped features

    bool feature_observed(Index feature, std::int64_t t) const {
        return t < vanish_round[static_cast<std::size_t>(feature)];
    }
};

enum class OverlapSetting { complete, incomplete, incomplete_completed };

std::string to_string(OverlapSetting setting);                   // "C" / "I" / "IC"
OverlapSetting parse_overlap_setting(const std::string& text);

struct PhasedInstance {
    std::int64_t t = 0;
    std::optional<ObservedRow> old_features;
    std::optional<Vector> new_features;
    double label = 0.0;
};

enum class DatasetFormat { sparse_index_value, dense_csv };

struct Dataset {
    Matrix features;
    Vector labels;
};

/// Sparse lines are "label idx:val idx:val ..." with 1-based indices; dense
/// CSV rows end with the label. Two-class labels are remapped to {-1, +1}
/// (smaller original label becomes -1).
Dataset ingest_dataset(const std::string& path, DatasetFormat format);

/// d1 x d2 map with i.i.d. N(0, 1) entries scaled by 1/sqrt(d1).
Matrix make_gaussian_map(Index d1, Index d2, std::uint64_t seed);

/// g^T x.
Vector gaussian_map(const Vector& x, const Matrix& g);

/// Draws a random feature order and assigns vanish rounds so the surviving
/// count decays roughly linearly to s_floor across the overlap. Observation
/// sets are nested prefixes of one uniform permutation. d2 = 0 means d1.
EvolutionScript make_script(Index d1, std::int64_t b, std::int64_t t1, std::int64_t t2,
                            Index s_floor, std::uint64_t seed, Index d2 = 0);

std::vector<PhasedInstance> synthesize_stream(const Matrix& data, const Vector& labels,
                                              const EvolutionScript& script,
                                              OverlapSetting setting);

/// Exactly rank-`rank` features with labels from a linear model in the latent
/// factors; label_noise flips that fraction of labels.
Dataset make_lowrank_dataset(std::int64_t n, Index d, Index rank, std::uint64_t seed,
                             double label_noise = 0.0);

/// Sensor-style regression stand-in: smooth low-dimensional trajectories
/// plus noise, real-valued target.
Dataset make_sensor_dataset(std::int64_t n, Index d, std::uint64_t seed);

}  // namespace pufe

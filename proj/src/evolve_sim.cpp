#include "pufe/evolve_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pufe {

namespace {
constexpr std::uint64_t kGaussStream = 0x67617573;  // derived-seed tags
constexpr std::uint64_t kNoiseStream = 0x6e6f6973;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

std::string to_string(OverlapSetting setting) {
    switch (setting) {
        case OverlapSetting::complete: return "C";
        case OverlapSetting::incomplete: return "I";
        case OverlapSetting::incomplete_completed: return "IC";
    }
    return "?";
}

OverlapSetting parse_overlap_setting(const std::string& text) {
    if (text == "C" || text == "complete") return OverlapSetting::complete;
    if (text == "I" || text == "incomplete") return OverlapSetting::incomplete;
    if (text == "IC" || text == "incomplete_completed") return OverlapSetting::incomplete_completed;
    throw std::invalid_argument("unknown overlap setting: " + text);
}

Dataset ingest_dataset(const std::string& path, DatasetFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::vector<double> labels;
    std::vector<std::vector<std::pair<Index, double>>> sparse_rows;
    std::vector<std::vector<double>> dense_rows;
    Index dim = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        if (format == DatasetFormat::sparse_index_value) {
            std::istringstream ss(line);
            std::string tok;
            if (!(ss >> tok)) throw std::runtime_error("parse error at " + where);
            std::size_t used = 0;
            double label = 0.0;
            try {
                label = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("parse error at " + where + ": bad label '" + tok + "'");
            }
            if (used != tok.size())
                throw std::runtime_error("parse error at " + where + ": bad label '" + tok + "'");
            std::vector<std::pair<Index, double>> entries;
            while (ss >> tok) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("parse error at " + where + ": expected idx:val, got '" +
                                             tok + "'");
                long idx = 0;
                double val = 0.0;
                try {
                    idx = std::stol(tok.substr(0, colon));
                    val = std::stod(tok.substr(colon + 1));
                } catch (const std::exception&) {
                    throw std::runtime_error("parse error at " + where + ": bad entry '" + tok + "'");
                }
                if (idx < 1)
                    throw std::runtime_error("parse error at " + where + ": index must be >= 1");
                entries.emplace_back(static_cast<Index>(idx - 1), val);
                dim = std::max<Index>(dim, static_cast<Index>(idx));
            }
            labels.push_back(label);
            sparse_rows.push_back(std::move(entries));
        } else {
            std::vector<double> fields;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    std::size_t used = 0;
                    fields.push_back(std::stod(cell, &used));
                } catch (const std::exception&) {
                    throw std::runtime_error("parse error at " + where + ": bad value '" + cell + "'");
                }
            }
            if (fields.size() < 2)
                throw std::runtime_error("parse error at " + where + ": need features plus label");
            if (!dense_rows.empty() && fields.size() != dense_rows.front().size() + 1)
                throw std::runtime_error("parse error at " + where + ": inconsistent column count");
            labels.push_back(fields.back());
            fields.pop_back();
            dim = static_cast<Index>(fields.size());
            dense_rows.push_back(std::move(fields));
        }
    }
    const std::size_t n =
        format == DatasetFormat::sparse_index_value ? sparse_rows.size() : dense_rows.size();
    if (n == 0) throw std::runtime_error("dataset file is empty: " + path);

    Dataset out;
    out.features = Matrix::Zero(static_cast<Index>(n), dim);
    out.labels.resize(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        out.labels(static_cast<Index>(i)) = labels[i];
        if (format == DatasetFormat::sparse_index_value) {
            for (const auto& [j, v] : sparse_rows[i]) out.features(static_cast<Index>(i), j) = v;
        } else {
            for (Index j = 0; j < dim; ++j)
                out.features(static_cast<Index>(i), j) = dense_rows[i][static_cast<std::size_t>(j)];
        }
    }

    // Two-class labels become {-1, +1}, smaller original value mapped to -1.
    std::map<double, Index> distinct;
    for (Index i = 0; i < out.labels.size(); ++i) distinct[out.labels(i)] = 0;
    if (distinct.size() == 2) {
        const double low = distinct.begin()->first;
        for (Index i = 0; i < out.labels.size(); ++i)
            out.labels(i) = out.labels(i) == low ? -1.0 : 1.0;
    }
    return out;
}

Matrix make_gaussian_map(Index d1, Index d2, std::uint64_t seed) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("make_gaussian_map: dims must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d1, d2);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d1));
    for (Index i = 0; i < d1; ++i)
        for (Index j = 0; j < d2; ++j) g(i, j) = gauss(rng) * scale;
    return g;
}

Vector gaussian_map(const Vector& x, const Matrix& g) {
    if (x.size() != g.rows()) throw std::invalid_argument("gaussian_map: dimension mismatch");
    return g.transpose() * x;
}

EvolutionScript make_script(Index d1, std::int64_t b, std::int64_t t1, std::int64_t t2,
                            Index s_floor, std::uint64_t seed, Index d2) {
    if (d1 < 1) throw std::invalid_argument("make_script: d1 must be >= 1");
    if (b < 1 || b > t1) throw std::invalid_argument("make_script: need 1 <= b <= t1");
    if (t2 < 1) throw std::invalid_argument("make_script: t2 must be >= 1");
    if (s_floor < 1 || s_floor > d1)
        throw std::invalid_argument("make_script: s_floor must lie in [1, d1]");

    EvolutionScript script;
    script.t1 = t1;
    script.overlap = b;
    script.t2 = t2;
    script.old_dim = d1;
    script.new_dim = d2 > 0 ? d2 : d1;
    script.seed = seed;

    // Surviving-feature counts decay linearly from d1 toward s_floor, hitting
    // it exactly at the last overlap round.
    std::vector<Index> sizes(static_cast<std::size_t>(b));
    for (std::int64_t i = 1; i <= b; ++i) {
        const double target = static_cast<double>(d1) -
                              static_cast<double>(d1 - s_floor) * static_cast<double>(i) /
                                  static_cast<double>(b);
        sizes[static_cast<std::size_t>(i - 1)] =
            std::clamp<Index>(static_cast<Index>(std::llround(target)), s_floor, d1);
    }

    std::vector<Index> order(static_cast<std::size_t>(d1));
    for (Index j = 0; j < d1; ++j) order[static_cast<std::size_t>(j)] = j;
    std::mt19937_64 rng(mix_seed(seed, 0x736372));
    std::shuffle(order.begin(), order.end(), rng);

    // Position k in the shuffled order is observed at overlap round i iff
    // k < sizes[i-1]; the sets are nested prefixes of one permutation.
    script.vanish_round.assign(static_cast<std::size_t>(d1), t1 + 1);
    for (Index k = 0; k < d1; ++k) {
        std::int64_t vanish = t1 + 1;
        for (std::int64_t i = 1; i <= b; ++i) {
            if (k >= sizes[static_cast<std::size_t>(i - 1)]) {
                vanish = t1 - b + i;
                break;
            }
        }
        script.vanish_round[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = vanish;
    }
    return script;
}

std::vector<PhasedInstance> synthesize_stream(const Matrix& data, const Vector& labels,
                                              const EvolutionScript& script,
                                              OverlapSetting setting) {
    if (data.rows() != labels.size())
        throw std::invalid_argument("synthesize_stream: feature/label count mismatch");
    if (data.cols() != script.old_dim)
        throw std::invalid_argument("synthesize_stream: data dimension differs from script d1");
    const std::int64_t total = script.t1 + script.t2;
    if (data.rows() < total)
        throw std::invalid_argument("synthesize_stream: dataset has fewer rows than t1 + t2");

    const Matrix g =
        make_gaussian_map(script.old_dim, script.new_dim, mix_seed(script.seed, kGaussStream));
    std::mt19937_64 noise_rng(mix_seed(script.seed, kNoiseStream));
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<PhasedInstance> stream;
    stream.reserve(static_cast<std::size_t>(total));
    for (std::int64_t t = 1; t <= total; ++t) {
        const Index row = static_cast<Index>(t - 1);
        PhasedInstance inst;
        inst.t = t;
        inst.label = labels(row);
        const bool has_old = t <= script.t1;
        const bool has_new = t > script.t1 - script.overlap;
        if (has_old) {
            const Vector x = data.row(row).transpose();
            if (setting == OverlapSetting::complete || t <= script.t1 - script.overlap) {
                inst.old_features = ObservedRow::dense(x);
            } else {
                ObservedRow obs;
                obs.dim = script.old_dim;
                for (Index j = 0; j < script.old_dim; ++j) {
                    if (script.feature_observed(j, t)) {
                        obs.indices.push_back(j);
                        obs.values.push_back(x(j));
                    }
                }
                inst.old_features = std::move(obs);
            }
        }
        if (has_new) {
            Vector mapped = gaussian_map(data.row(row).transpose(), g);
            if (script.noise_std > 0.0)
                for (Index j = 0; j < mapped.size(); ++j)
                    mapped(j) += script.noise_std * gauss(noise_rng);
            inst.new_features = std::move(mapped);
        }
        stream.push_back(std::move(inst));
    }
    return stream;
}

Dataset make_lowrank_dataset(std::int64_t n, Index d, Index rank, std::uint64_t seed,
                             double label_noise) {
    if (n < 1 || d < 1 || rank < 1 || rank > d)
        throw std::invalid_argument("make_lowrank_dataset: bad shape");
    std::mt19937_64 rng(mix_seed(seed, 0x6c6f77));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Matrix factors(d, rank);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < rank; ++j) factors(i, j) = gauss(rng);
    Vector direction(rank);
    for (Index j = 0; j < rank; ++j) direction(j) = gauss(rng);
    direction.normalize();

    Dataset out;
    out.features.resize(n, d);
    out.labels.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(rank));
    for (Index i = 0; i < n; ++i) {
        Vector latent(rank);
        double margin = 0.0;
        do {  // keep a margin so the labels stay linearly realizable in practice
            for (Index j = 0; j < rank; ++j) latent(j) = gauss(rng);
            margin = std::abs(direction.dot(latent));
        } while (margin < 0.15);
        out.features.row(i) = (factors * latent).transpose() * scale;
        double y = direction.dot(latent) >= 0.0 ? 1.0 : -1.0;
        if (label_noise > 0.0 && unif(rng) < label_noise) y = -y;
        out.labels(i) = y;
    }
    return out;
}

Dataset make_sensor_dataset(std::int64_t n, Index d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("make_sensor_dataset: bad shape");
    constexpr Index kLatent = 3;
    std::mt19937_64 rng(mix_seed(seed, 0x73656e73));
    std::normal_distribution<double> gauss(0.0, 1.0);

    Matrix loadings(d, kLatent);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < kLatent; ++j) loadings(i, j) = gauss(rng);
    Vector target_w(kLatent);
    for (Index j = 0; j < kLatent; ++j) target_w(j) = gauss(rng);

    Vector freq(kLatent), phase(kLatent);
    for (Index j = 0; j < kLatent; ++j) {
        freq(j) = 1.0 + 2.0 * static_cast<double>(j);
        phase(j) = gauss(rng);
    }

    Dataset out;
    out.features.resize(n, d);
    out.labels.resize(n);
    for (Index i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n);
        Vector latent(kLatent);
        for (Index j = 0; j < kLatent; ++j)
            latent(j) = std::sin(2.0 * M_PI * freq(j) * u + phase(j));
        Vector x = loadings * latent;
        for (Index j = 0; j < d; ++j) x(j) += 0.01 * gauss(rng);
        out.features.row(i) = x.transpose();
        out.labels(i) = target_w.dot(latent) + 0.05 * gauss(rng);
    }
    return out;
}

}  // namespace pufe

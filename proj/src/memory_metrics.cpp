#include "wmb/memory_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace wmb {

void validate(const MemoryConfig& cfg)
{
    if (cfg.a < 0.0) {
        throw Error("memory offset a must be non-negative");
    }
    if (!(cfg.k_val > 0.0) || !(cfg.k_exp > 0.0) || !(cfg.gamma > 0.0)) {
        throw Error("memory k_val, k_exp and gamma must be positive");
    }
}

std::vector<double> mirrored_pair_mse(const FrameSequence& seq)
{
    const std::size_t n = seq.size();
    std::vector<double> out(n / 2);
    for (std::size_t t = 0; t < out.size(); ++t) {
        out[t] = frame_mse(seq[t], seq[n - 1 - t]);
    }
    return out;
}

double memory_symmetry(std::span<const double> pair_mse, int frames, const MemoryConfig& cfg)
{
    if (frames < 2) {
        throw Error("sequence too short");
    }
    validate(cfg);
    if (pair_mse.size() != static_cast<std::size_t>(frames / 2)) {
        throw Error("pair count does not match the sequence length");
    }
    const auto w = inverse_decay_weights(frames, cfg.gamma, cfg.weight_mode);
    double score = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        const double excess = std::max(0.0, pair_mse[t] - cfg.a);
        score += w[t] * std::exp(-cfg.k_val * std::pow(excess, cfg.k_exp));
    }
    return std::clamp(score, 0.0, 1.0);
}

double memory_symmetry(const FrameSequence& seq, const MemoryConfig& cfg)
{
    if (seq.size() < 2) {
        throw Error("sequence too short");
    }
    return memory_symmetry(mirrored_pair_mse(seq), static_cast<int>(seq.size()), cfg);
}

double memory_trajectory_alignment(const PoseSequence& poses, double k)
{
    const std::size_t n = poses.size();
    if (n < 3) {
        throw Error("trajectory alignment needs at least three poses");
    }
    std::vector<Eigen::Vector3d> v(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        v[t] = poses[t + 1].translation - poses[t].translation;
    }
    const std::size_t half = n / 2;
    double total = 0.0;
    for (std::size_t t = 1; t <= half; ++t) {
        const std::size_t j = std::min(n - t + 1, n - 1);
        const Eigen::Vector3d& a = v[t - 1];
        const Eigen::Vector3d b = -v[j - 1];
        double c;
        if (a.norm() < 1e-12 && b.norm() < 1e-12) {
            c = 1.0;  // both legs stationary
        } else {
            c = cosine_sim(std::span<const double>(a.data(), 3), std::span<const double>(b.data(), 3));
        }
        total += upper_convex_log(std::max(0.0, c), k);
    }
    return total / static_cast<double>(half);
}

}  // namespace wmb

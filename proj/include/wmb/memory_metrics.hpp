#pragma once

#include <span>
#include <vector>

#include "wmb/frame.hpp"
#include "wmb/pose.hpp"
#include "wmb/transforms.hpp"

namespace wmb {

struct MemoryConfig {
    double a = 10.0;  ///< MSE offset absorbed before penalizing
    double k_val = 0.001;
    double k_exp = 1.0;
    double gamma = kDefaultGamma;
    MemoryWeightMode weight_mode = MemoryWeightMode::Prose;
};

void validate(const MemoryConfig& cfg);

/// MSE between frame t and frame T-t+1 for t = 1..floor(T/2).
std::vector<double> mirrored_pair_mse(const FrameSequence& seq);

/// Weighted e^{-k_val * max(0, mse - a)^k_exp} over mirrored pairs of a
/// sequence of `frames` frames; `pair_mse` has floor(frames/2) entries.
double memory_symmetry(std::span<const double> pair_mse, int frames, const MemoryConfig& cfg);
double memory_symmetry(const FrameSequence& seq, const MemoryConfig& cfg);

/// Mean of L(max(0, cos(v_t, -v_{T-t+1}))) over t = 1..floor(T/2), where v
/// are translation first differences and the mirrored index is capped at T-1.
double memory_trajectory_alignment(const PoseSequence& poses, double k = kDefaultLogK);

}  // namespace wmb

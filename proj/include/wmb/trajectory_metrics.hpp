#pragma once

#include <array>
#include <functional>
#include <vector>

#include "wmb/frame.hpp"
#include "wmb/pose.hpp"
#include "wmb/transforms.hpp"

namespace wmb {

/// First differences of the flattened 3x4 extrinsics, one per step.
using TangentSeries = std::vector<std::array<double, 12>>;

TangentSeries tangent_series(const PoseSequence& poses);

/// Rotates `raw` globally to match the reference's net displacement direction.
/// Identity when either net displacement is below 1e-9.
PoseSequence align_to_reference(const PoseSequence& raw, const PoseSequence& reference);

struct TrajectoryOptions {
    double k = kDefaultLogK;
    /// Use the signed cosine (negatives clamped to 0) instead of its magnitude.
    bool signed_cosine = false;
};

/// Mean of L(|cos|) over paired tangents; the series must have equal length.
double tangent_agreement(const TangentSeries& a, const TangentSeries& b, const TrajectoryOptions& opts = {});

double trajectory_accuracy(const PoseSequence& sync, const PoseSequence& cmd, const TrajectoryOptions& opts = {});
double trajectory_tolerance(const PoseSequence& sync, const PoseSequence& gt, const TrajectoryOptions& opts = {});

/// Rebuilds the frame at 0-based `index` from its two neighbours.
using Reconstructor = std::function<Frame(const Frame& prev, const Frame& next, std::size_t index)>;
/// Perceptual distance in [0,1]; 0 means indistinguishable.
using PerceptualDistance = std::function<double(const Frame&, const Frame&)>;

/// Per-pixel mean of the neighbours, rounded half up.
Frame blend_reconstruct(const Frame& prev, const Frame& next, std::size_t index = 0);

struct SmoothnessConfig {
    double w_ssim = 0.5;
    double w_mse = 0.5;
    double w_perceptual = 0.0;
    double sigma_mse = 50.0;
};

/// Score of one reconstructed frame against the original.
double reconstruction_score(const Frame& original, const Frame& rebuilt, const SmoothnessConfig& cfg,
                            const PerceptualDistance& perceptual = nullptr);

/// Drops frames 2, 4, ... (1-based, interior only), rebuilds each from its
/// neighbours and averages the reconstruction scores.
double motion_smoothness(const FrameSequence& seq, const Reconstructor& recon = blend_reconstruct,
                         const SmoothnessConfig& cfg = {}, const PerceptualDistance& perceptual = nullptr);

}  // namespace wmb

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wmb/frame.hpp"
#include "wmb/transforms.hpp"

namespace wmb {

struct VisualConfig {
    double lambda = kDefaultLambda;
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    double k = kDefaultLogK;
    int dark_max = kDefaultDarkMax;
    int bright_min = kDefaultBrightMin;
    double noise_tau = 50.0;
    int breaker_window = 5;
    bool breaker_latching = true;
    double quality_min = 0.0;
    double quality_max = 100.0;
};

/// Throws if the configuration violates its invariants (beta > alpha, etc.).
void validate(const VisualConfig& cfg);

/// Frame -> noise score; higher is noisier. Must be deterministic.
using NoiseScoreProvider = std::function<double(const Frame&)>;
/// Frame -> quality score on the [quality_min, quality_max] scale.
using FrameQualityProvider = std::function<double(const Frame&)>;

/// Analytic noise proxy in [0,100): 100 * v / (v + scale) with v the
/// variance of the Laplacian. Flat frames score 0.
double laplacian_noise_score(const Frame& frame, double scale = 1000.0);
NoiseScoreProvider laplacian_noise_provider(double scale = 1000.0);

/// Analytic quality proxy in [0,100]: grayscale contrast, saturating at a
/// standard deviation of 64 levels.
double contrast_quality_score(const Frame& frame);
FrameQualityProvider contrast_quality_provider();

/// Normalized mean frame score, clamped to [0,1].
double image_quality(std::span<const double> scores, double score_min, double score_max);

// Track-level scorers; the sequence overloads extract the per-frame vectors
// and delegate here.
double brightness_consistency(std::span<const BrightnessVector> track, const VisualConfig& cfg);
double color_temperature(std::span<const HueVector> track, const VisualConfig& cfg);
double sharpness_retention(std::span<const SharpnessVector> track, std::span<const double> noise,
                           const VisualConfig& cfg);

double brightness_consistency(const FrameSequence& seq, const VisualConfig& cfg);
double color_temperature(const FrameSequence& seq, const VisualConfig& cfg);
double sharpness_retention(const FrameSequence& seq, const NoiseScoreProvider& noise, const VisualConfig& cfg);

std::vector<double> score_frames(const FrameSequence& seq, const std::function<double(const Frame&)>& provider);

}  // namespace wmb

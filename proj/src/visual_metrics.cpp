#include "wmb/visual_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wmb {
namespace {

void require_track(std::size_t frames)
{
    if (frames < 2) {
        throw Error("sequence too short");
    }
}

double similarity(std::span<const double> a, std::span<const double> b)
{
    return cosine_sim(a, b);
}

}  // namespace

void validate(const VisualConfig& cfg)
{
    if (!(cfg.lambda > 0.0) || !(cfg.k > 0.0)) {
        throw Error("lambda and k must be positive");
    }
    if (!(cfg.alpha > 0.0) || !(cfg.beta > cfg.alpha)) {
        throw Error("decay coefficients require beta > alpha > 0");
    }
    if (cfg.breaker_window < 1) {
        throw Error("breaker_window must be at least 1");
    }
    if (!(cfg.quality_max > cfg.quality_min)) {
        throw Error("quality_max must exceed quality_min");
    }
    if (!(0 < cfg.dark_max && cfg.dark_max < cfg.bright_min && cfg.bright_min <= 255)) {
        throw Error("brightness bands require 0 < dark_max < bright_min <= 255");
    }
}

double laplacian_noise_score(const Frame& frame, double scale)
{
    const double v = laplacian_variance(to_grayscale(frame));
    return 100.0 * v / (v + scale);
}

NoiseScoreProvider laplacian_noise_provider(double scale)
{
    if (!(scale > 0.0)) {
        throw Error("noise_scale must be positive");
    }
    return [scale](const Frame& f) { return laplacian_noise_score(f, scale); };
}

double contrast_quality_score(const Frame& frame)
{
    const GrayFrame gray = to_grayscale(frame);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint8_t v : gray.data()) {
        sum += v;
        sum_sq += static_cast<double>(v) * v;
    }
    const double n = static_cast<double>(gray.pixel_count());
    const double mean = sum / n;
    const double sd = std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
    return 100.0 * std::min(1.0, sd / 64.0);
}

FrameQualityProvider contrast_quality_provider()
{
    return [](const Frame& f) { return contrast_quality_score(f); };
}

double image_quality(std::span<const double> scores, double score_min, double score_max)
{
    if (scores.empty()) {
        throw Error("empty score list");
    }
    if (!(score_max > score_min)) {
        throw Error("score_max must exceed score_min");
    }
    const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    return std::clamp((mean - score_min) / (score_max - score_min), 0.0, 1.0);
}

double brightness_consistency(std::span<const BrightnessVector> track, const VisualConfig& cfg)
{
    require_track(track.size());
    const auto w = decay_weights(static_cast<int>(track.size()), cfg.alpha);
    double score = 0.0;
    for (std::size_t d = 1; d < track.size(); ++d) {
        const double s = std::max(0.0, similarity(track[d], track[0]));
        score += w[d - 1] * modified_softmax(s, cfg.lambda);
    }
    return std::clamp(score, 0.0, 1.0);
}

double color_temperature(std::span<const HueVector> track, const VisualConfig& cfg)
{
    require_track(track.size());
    const auto w = decay_weights(static_cast<int>(track.size()), cfg.beta);
    double score = 0.0;
    for (std::size_t d = 1; d < track.size(); ++d) {
        const double s = 0.5 * (similarity(track[d], track[0]) + similarity(track[d], track[d - 1]));
        score += w[d - 1] * modified_softmax(std::max(0.0, s), cfg.lambda);
    }
    return std::clamp(score, 0.0, 1.0);
}

double sharpness_retention(std::span<const SharpnessVector> track, std::span<const double> noise,
                           const VisualConfig& cfg)
{
    require_track(track.size());
    if (noise.size() != track.size()) {
        throw Error("noise scores must cover every frame");
    }
    const auto w = decay_weights(static_cast<int>(track.size()), cfg.alpha);
    int run = noise[0] > cfg.noise_tau ? 1 : 0;
    bool tripped = run >= cfg.breaker_window;
    double score = 0.0;
    for (std::size_t t = 1; t < track.size(); ++t) {
        run = noise[t] > cfg.noise_tau ? run + 1 : 0;
        if (cfg.breaker_latching) {
            tripped = tripped || run >= cfg.breaker_window;
        } else {
            tripped = run >= cfg.breaker_window;
        }
        const double c = similarity(track[t], track[0]);
        const double m = (!tripped && noise[t] < cfg.noise_tau) ? std::max(0.0, c) : std::clamp(1.0 - c, 0.0, 0.2);
        score += w[t - 1] * upper_convex_log(m, cfg.k);
    }
    return std::clamp(score, 0.0, 1.0);
}

double brightness_consistency(const FrameSequence& seq, const VisualConfig& cfg)
{
    std::vector<BrightnessVector> track;
    track.reserve(seq.size());
    for (const Frame& f : seq) {
        track.push_back(brightness_vector(to_grayscale(f), cfg.dark_max, cfg.bright_min));
    }
    return brightness_consistency(track, cfg);
}

double color_temperature(const FrameSequence& seq, const VisualConfig& cfg)
{
    std::vector<HueVector> track;
    track.reserve(seq.size());
    for (const Frame& f : seq) {
        track.push_back(hue_vector(f));
    }
    return color_temperature(track, cfg);
}

double sharpness_retention(const FrameSequence& seq, const NoiseScoreProvider& noise, const VisualConfig& cfg)
{
    std::vector<SharpnessVector> track;
    track.reserve(seq.size());
    for (const Frame& f : seq) {
        track.push_back(sharpness_vector(to_grayscale(f)));
    }
    return sharpness_retention(track, score_frames(seq, noise), cfg);
}

std::vector<double> score_frames(const FrameSequence& seq, const std::function<double(const Frame&)>& provider)
{
    if (!provider) {
        throw Error("no score provider configured");
    }
    std::vector<double> out;
    out.reserve(seq.size());
    for (const Frame& f : seq) {
        const double v = provider(f);
        if (!std::isfinite(v)) {
            throw Error("score provider returned a non-finite value");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace wmb

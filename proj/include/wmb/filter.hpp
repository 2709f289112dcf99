#pragma once

#include <vector>

#include "wmb/frame.hpp"

namespace wmb {

struct FilterConfig {
    double brightness_k_sigma = 3.0;
    double brightness_floor = 10.0;
    int residual_window = 0;  ///< 0: residual deviation over the whole sequence
    double mse_z_threshold = 4.0;
    int mse_window = 31;
    int density_window = 31;
    double density_tau = 0.06;
    int merge_gap = 10;
    int min_len = 81;
    PercentileRule percentile_rule = PercentileRule::NearestRank;
};

void validate(const FilterConfig& cfg);

/// Inclusive 1-based frame range.
struct Segment {
    int start = 1;
    int end = 1;
    int length() const { return end - start + 1; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct FrameSeries {
    std::vector<double> light;  ///< 95th-percentile gray level per frame
    std::vector<double> mse;    ///< mse[i] between frames i+1 and i+2 (1-based)
};

FrameSeries frame_series(const FrameSequence& seq, PercentileRule rule = PercentileRule::NearestRank);

/// Sorted 1-based indices of frames flagged by either the brightness-residual
/// test or the rolling MSE z-score test.
std::vector<int> detect_anomalies(const std::vector<double>& light, const std::vector<double>& mse,
                                  const FilterConfig& cfg);

/// 0/1 indicator of length `frames` for the given 1-based flags.
std::vector<int> flag_indicator(const std::vector<int>& flags, int frames);

/// Boxcar average of the indicator with a fixed divisor of `window`.
std::vector<double> anomaly_density(const std::vector<int>& indicator, int window);

std::vector<Segment> clean_segments(const std::vector<double>& density, const FilterConfig& cfg);

struct RefineResult {
    std::vector<Segment> segments;
    std::vector<int> flags;
};

RefineResult refine(const FrameSequence& seq, const FilterConfig& cfg);

}  // namespace wmb

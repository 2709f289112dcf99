#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmb {

/// Library-wide error type. Messages are meant to be shown to the user as-is.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An 8-bit RGB image stored row-major as interleaved R,G,B triples.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, std::vector<std::uint8_t> rgb);

    /// Frame filled with a single colour.
    static Frame filled(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const noexcept { return pixel_count() == 0; }

    std::span<const std::uint8_t> data() const noexcept { return rgb_; }

    std::array<std::uint8_t, 3> at(int x, int y) const
    {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
        return {rgb_[i], rgb_[i + 1], rgb_[i + 2]};
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> rgb_;
};

/// Single-channel 8-bit image, same layout as Frame without interleaving.
class GrayFrame {
public:
    GrayFrame() = default;
    GrayFrame(int width, int height, std::vector<std::uint8_t> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const std::uint8_t> data() const noexcept { return values_; }
    std::uint8_t at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    friend bool operator==(const GrayFrame&, const GrayFrame&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> values_;
};

/// Ordered frames sharing one resolution, plus the playback rate.
class FrameSequence {
public:
    FrameSequence(std::vector<Frame> frames, double fps = 30.0);

    std::size_t size() const noexcept { return frames_.size(); }
    const Frame& operator[](std::size_t i) const { return frames_[i]; }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    double fps() const noexcept { return fps_; }
    int width() const noexcept { return frames_.front().width(); }
    int height() const noexcept { return frames_.front().height(); }

    auto begin() const noexcept { return frames_.begin(); }
    auto end() const noexcept { return frames_.end(); }

    /// Frames [first, first+count) as a new sequence.
    FrameSequence slice(std::size_t first, std::size_t count) const;

private:
    std::vector<Frame> frames_;
    double fps_;
};

/// Fractions of pixels in the dark, mid and bright bands.
using BrightnessVector = std::array<double, 3>;
/// Fractions of saturated pixels per hue interval.
using HueVector = std::array<double, 7>;
/// Summed absolute horizontal and vertical gradient responses.
using SharpnessVector = std::array<double, 2>;

inline constexpr int kDefaultDarkMax = 85;
inline constexpr int kDefaultBrightMin = 170;
inline constexpr int kHueBins = 7;

enum class PercentileRule {
    NearestRank,  ///< value at sorted index ceil(p*N)-1
    Linear,       ///< linear interpolation between closest ranks, (N-1)*p
};

/// BT.601 luma, rounded to the nearest integer.
GrayFrame to_grayscale(const Frame& frame);

BrightnessVector brightness_vector(const GrayFrame& frame, int dark_max = kDefaultDarkMax,
                                   int bright_min = kDefaultBrightMin);

/// Hue histogram on the 0-179 half-degree scale. Pixels with zero saturation
/// are skipped; an all-gray frame yields the zero vector.
HueVector hue_vector(const Frame& frame);

/// Hue of one pixel on the half-degree scale [0,180), or a negative value for
/// an unsaturated pixel.
double pixel_hue(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// 3x3 Sobel responses over interior pixels only.
SharpnessVector sharpness_vector(const GrayFrame& frame);

/// Mean squared channel difference over all pixels and channels.
double frame_mse(const Frame& a, const Frame& b);

double percentile_gray(const GrayFrame& frame, double p, PercentileRule rule = PercentileRule::NearestRank);

inline double p95_gray(const GrayFrame& frame, PercentileRule rule = PercentileRule::NearestRank)
{
    return percentile_gray(frame, 0.95, rule);
}

/// Variance of the 4-neighbour Laplacian over interior pixels.
double laplacian_variance(const GrayFrame& frame);

}  // namespace wmb

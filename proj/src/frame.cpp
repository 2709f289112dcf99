#include "wmb/frame.hpp"

#include <algorithm>
#include <cmath>

namespace wmb {

Frame::Frame(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), rgb_(std::move(rgb))
{
    if (width <= 0 || height <= 0) {
        throw Error("frame dimensions must be positive");
    }
    if (rgb_.size() != 3 * static_cast<std::size_t>(width) * height) {
        throw Error("frame pixel count does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
    }
}

Frame Frame::filled(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    std::vector<std::uint8_t> rgb(3 * static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0));
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
    return Frame(width, height, std::move(rgb));
}

GrayFrame::GrayFrame(int width, int height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values))
{
    if (width <= 0 || height <= 0) {
        throw Error("frame dimensions must be positive");
    }
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw Error("gray frame pixel count does not match dimensions");
    }
}

FrameSequence::FrameSequence(std::vector<Frame> frames, double fps)
    : frames_(std::move(frames)), fps_(fps)
{
    if (frames_.empty()) {
        throw Error("frame sequence is empty");
    }
    if (!(fps > 0.0) || !std::isfinite(fps)) {
        throw Error("fps must be positive");
    }
    for (const Frame& f : frames_) {
        if (f.width() != frames_.front().width() || f.height() != frames_.front().height()) {
            throw Error("frames in a sequence must share one resolution");
        }
    }
}

FrameSequence FrameSequence::slice(std::size_t first, std::size_t count) const
{
    if (first + count > frames_.size() || count == 0) {
        throw Error("frame slice out of range");
    }
    return FrameSequence(std::vector<Frame>(frames_.begin() + first, frames_.begin() + first + count), fps_);
}

GrayFrame to_grayscale(const Frame& frame)
{
    const auto rgb = frame.data();
    std::vector<std::uint8_t> out(frame.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
        out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
    }
    return GrayFrame(frame.width(), frame.height(), std::move(out));
}

BrightnessVector brightness_vector(const GrayFrame& frame, int dark_max, int bright_min)
{
    if (!(0 < dark_max && dark_max < bright_min && bright_min <= 255)) {
        throw Error("brightness bands require 0 < dark_max < bright_min <= 255");
    }
    if (frame.empty()) {
        throw Error("empty input");
    }
    std::array<std::size_t, 3> counts{};
    for (std::uint8_t v : frame.data()) {
        if (v <= dark_max) {
            ++counts[0];
        } else if (v < bright_min) {
            ++counts[1];
        } else {
            ++counts[2];
        }
    }
    const double n = static_cast<double>(frame.pixel_count());
    return {counts[0] / n, counts[1] / n, counts[2] / n};
}

double pixel_hue(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    const int mx = std::max({r, g, b});
    const int mn = std::min({r, g, b});
    if (mx == mn) {
        return -1.0;
    }
    const double delta = mx - mn;
    double degrees;
    if (mx == r) {
        degrees = 60.0 * (g - b) / delta;
    } else if (mx == g) {
        degrees = 120.0 + 60.0 * (b - r) / delta;
    } else {
        degrees = 240.0 + 60.0 * (r - g) / delta;
    }
    if (degrees < 0.0) {
        degrees += 360.0;
    }
    return degrees / 2.0;
}

HueVector hue_vector(const Frame& frame)
{
    constexpr double kBinWidth = 180.0 / kHueBins;
    std::array<std::size_t, kHueBins> counts{};
    std::size_t counted = 0;
    const auto rgb = frame.data();
    for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
        const double h = pixel_hue(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
        if (h < 0.0) {
            continue;
        }
        const int bin = std::min(kHueBins - 1, static_cast<int>(h / kBinWidth));
        ++counts[bin];
        ++counted;
    }
    HueVector out{};
    if (counted == 0) {
        return out;
    }
    for (int i = 0; i < kHueBins; ++i) {
        out[i] = static_cast<double>(counts[i]) / counted;
    }
    return out;
}

SharpnessVector sharpness_vector(const GrayFrame& frame)
{
    if (frame.width() < 3 || frame.height() < 3) {
        throw Error("frame too small for gradient");
    }
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (int y = 1; y + 1 < frame.height(); ++y) {
        for (int x = 1; x + 1 < frame.width(); ++x) {
            const int tl = frame.at(x - 1, y - 1), tc = frame.at(x, y - 1), tr = frame.at(x + 1, y - 1);
            const int ml = frame.at(x - 1, y), mr = frame.at(x + 1, y);
            const int bl = frame.at(x - 1, y + 1), bc = frame.at(x, y + 1), br = frame.at(x + 1, y + 1);
            const int gx = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
            const int gy = (bl + 2 * bc + br) - (tl + 2 * tc + tr);
            sum_x += std::abs(gx);
            sum_y += std::abs(gy);
        }
    }
    return {sum_x, sum_y};
}

double frame_mse(const Frame& a, const Frame& b)
{
    if (a.width() != b.width() || a.height() != b.height()) {
        throw Error("frame dimension mismatch");
    }
    const auto da = a.data();
    const auto db = b.data();
    if (da.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = static_cast<double>(da[i]) - db[i];
        acc += d * d;
    }
    return acc / static_cast<double>(da.size());
}

double percentile_gray(const GrayFrame& frame, double p, PercentileRule rule)
{
    if (frame.empty()) {
        throw Error("empty input");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("percentile must lie in [0,1]");
    }
    // Counting sort; values are 8-bit.
    std::array<std::size_t, 256> hist{};
    for (std::uint8_t v : frame.data()) {
        ++hist[v];
    }
    auto value_at = [&hist](std::size_t index) {
        std::size_t seen = 0;
        for (int v = 0; v < 256; ++v) {
            seen += hist[v];
            if (seen > index) {
                return static_cast<double>(v);
            }
        }
        return 255.0;
    };
    const std::size_t n = frame.pixel_count();
    if (rule == PercentileRule::NearestRank) {
        // 1e-9 guards against p*n landing a hair above an integer.
        auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-9));
        rank = std::clamp<std::size_t>(rank, 1, n);
        return value_at(rank - 1);
    }
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    return value_at(lo) + frac * (value_at(hi) - value_at(lo));
}

double laplacian_variance(const GrayFrame& frame)
{
    if (frame.width() < 3 || frame.height() < 3) {
        throw Error("frame too small for gradient");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
    for (int y = 1; y + 1 < frame.height(); ++y) {
        for (int x = 1; x + 1 < frame.width(); ++x) {
            const double lap = frame.at(x - 1, y) + frame.at(x + 1, y) + frame.at(x, y - 1) +
                               frame.at(x, y + 1) - 4.0 * frame.at(x, y);
            sum += lap;
            sum_sq += lap * lap;
            ++n;
        }
    }
    const double mean = sum / n;
    return std::max(0.0, sum_sq / n - mean * mean);
}

}  // namespace wmb

#include "wmb/ssim.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace wmb {
namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

const std::array<double, kWindow>& gaussian_taps()
{
    static const std::array<double, kWindow> taps = [] {
        std::array<double, kWindow> g{};
        double total = 0.0;
        for (int i = 0; i < kWindow; ++i) {
            const double x = i - kWindow / 2;
            g[i] = std::exp(-(x * x) / (2.0 * kSigma * kSigma));
            total += g[i];
        }
        for (double& v : g) {
            v /= total;
        }
        return g;
    }();
    return taps;
}

double ssim_from_moments(double mx, double my, double sxx, double syy, double sxy)
{
    return ((2.0 * mx * my + kC1) * (2.0 * sxy + kC2)) / ((mx * mx + my * my + kC1) * (sxx + syy + kC2));
}

double global_ssim(const GrayFrame& a, const GrayFrame& b)
{
    const auto da = a.data();
    const auto db = b.data();
    const double n = static_cast<double>(da.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        mx += da[i];
        my += db[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double x = da[i] - mx;
        const double y = db[i] - my;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    return ssim_from_moments(mx, my, sxx / n, syy / n, sxy / n);
}

// Separable valid-mode filtering of one plane.
std::vector<double> filter_valid(const std::vector<double>& plane, int width, int height)
{
    const auto& g = gaussian_taps();
    const int out_w = width - kWindow + 1;
    const int out_h = height - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(out_w) * height);
    for (int y = 0; y < height; ++y) {
        const double* src = plane.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += g[k] * src[x + k];
            }
            rows[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += g[k] * rows[static_cast<std::size_t>(y + k) * out_w + x];
            }
            out[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    return out;
}

}  // namespace

double ssim(const GrayFrame& a, const GrayFrame& b)
{
    if (a.width() != b.width() || a.height() != b.height()) {
        throw Error("frame dimension mismatch");
    }
    if (a.empty()) {
        throw Error("empty input");
    }
    if (a.width() < kWindow || a.height() < kWindow) {
        return global_ssim(a, b);
    }
    const std::size_t n = a.pixel_count();
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a.data()[i];
        y[i] = b.data()[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const int w = a.width();
    const int h = a.height();
    const auto mx = filter_valid(x, w, h);
    const auto my = filter_valid(y, w, h);
    const auto mxx = filter_valid(xx, w, h);
    const auto myy = filter_valid(yy, w, h);
    const auto mxy = filter_valid(xy, w, h);
    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        total += ssim_from_moments(mx[i], my[i], mxx[i] - mx[i] * mx[i], myy[i] - my[i] * my[i],
                                   mxy[i] - mx[i] * my[i]);
    }
    return total / static_cast<double>(mx.size());
}

}  // namespace wmb

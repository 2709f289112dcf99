#include "wmb/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wmb/frame.hpp"

namespace wmb {
namespace {

constexpr double kZeroNorm = 1e-12;

void normalize(std::vector<double>& w)
{
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) {
        v /= total;
    }
}

void require_unit_interval(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error("transform input must lie in [0,1]");
    }
}

}  // namespace

double cosine_sim(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw Error("cosine similarity needs vectors of equal dimension");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na < kZeroNorm || nb < kZeroNorm) {
        return 0.0;
    }
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double modified_softmax(double x, double lambda)
{
    require_unit_interval(x);
    if (!(lambda > 0.0)) {
        throw Error("lambda must be positive");
    }
    return std::expm1(lambda * x) / std::expm1(lambda);
}

double upper_convex_log(double x, double k)
{
    require_unit_interval(x);
    if (!(k > 0.0)) {
        throw Error("k must be positive");
    }
    return std::log1p(k * x) / std::log1p(k);
}

std::vector<double> decay_weights(int frames, double coeff)
{
    if (frames < 2) {
        throw Error("decay weights need at least two frames");
    }
    if (!(coeff > 0.0)) {
        throw Error("decay coefficient must be positive");
    }
    std::vector<double> w(static_cast<std::size_t>(frames - 1));
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(-coeff * static_cast<double>(i + 1));
    }
    normalize(w);
    return w;
}

std::vector<double> inverse_decay_weights(int frames, double gamma, MemoryWeightMode mode)
{
    if (frames < 2) {
        throw Error("decay weights need at least two frames");
    }
    if (!(gamma > 0.0)) {
        throw Error("gamma must be positive");
    }
    std::vector<double> w(static_cast<std::size_t>(frames / 2));
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = static_cast<double>(i + 1);
        const double d = mode == MemoryWeightMode::Prose ? t - 1.0 : std::abs(frames / 2.0 - t);
        w[i] = std::exp(-gamma * d);
    }
    normalize(w);
    return w;
}

}  // namespace wmb

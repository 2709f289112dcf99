#include "wmb/filter.hpp"

#include <algorithm>
#include <cmath>

namespace wmb {
namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

Moments population_moments(const std::vector<double>& v, std::size_t lo, std::size_t hi, std::size_t skip)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (i != skip) {
            sum += v[i];
            ++n;
        }
    }
    Moments m;
    if (n == 0) {
        return m;
    }
    m.mean = sum / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (i != skip) {
            acc += (v[i] - m.mean) * (v[i] - m.mean);
        }
    }
    m.sd = std::sqrt(acc / static_cast<double>(n));
    return m;
}

double local_median(const std::vector<double>& v, std::size_t i)
{
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(i + 1, v.size() - 1);
    std::vector<double> w(v.begin() + lo, v.begin() + hi + 1);
    std::sort(w.begin(), w.end());
    if (w.size() % 2 == 1) {
        return w[w.size() / 2];
    }
    return 0.5 * (w[w.size() / 2 - 1] + w[w.size() / 2]);
}

}  // namespace

void validate(const FilterConfig& cfg)
{
    if (!(cfg.density_tau > 0.0 && cfg.density_tau < 1.0)) {
        throw Error("density_tau must lie in (0,1)");
    }
    if (cfg.mse_window < 1 || cfg.density_window < 1 || cfg.min_len < 1 || cfg.residual_window < 0) {
        throw Error("filter windows and min_len must be positive");
    }
    if (cfg.merge_gap < 0) {
        throw Error("merge_gap must be non-negative");
    }
}

FrameSeries frame_series(const FrameSequence& seq, PercentileRule rule)
{
    if (seq.size() < 2) {
        throw Error("sequence too short");
    }
    FrameSeries s;
    s.light.reserve(seq.size());
    s.mse.reserve(seq.size() - 1);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        s.light.push_back(p95_gray(to_grayscale(seq[t]), rule));
        if (t > 0) {
            s.mse.push_back(frame_mse(seq[t - 1], seq[t]));
        }
    }
    return s;
}

std::vector<int> detect_anomalies(const std::vector<double>& light, const std::vector<double>& mse,
                                  const FilterConfig& cfg)
{
    validate(cfg);
    const std::size_t n = light.size();
    if (n == 0) {
        return {};
    }
    if (mse.size() + 1 != n) {
        throw Error("mse series must be one shorter than the light series");
    }
    std::vector<bool> flagged(n, false);

    std::vector<double> residual(n);
    for (std::size_t t = 0; t < n; ++t) {
        residual[t] = std::abs(light[t] - local_median(light, t));
    }
    const Moments global = population_moments(residual, 0, n - 1, n);
    for (std::size_t t = 0; t < n; ++t) {
        double sd = global.sd;
        if (cfg.residual_window > 0) {
            const std::size_t half = static_cast<std::size_t>(cfg.residual_window / 2);
            const std::size_t lo = t >= half ? t - half : 0;
            const std::size_t hi = std::min(t + half, n - 1);
            sd = population_moments(residual, lo, hi, n).sd;
        }
        if (residual[t] > std::max(cfg.brightness_k_sigma * sd, cfg.brightness_floor)) {
            flagged[t] = true;
        }
    }

    const std::size_t half = static_cast<std::size_t>((cfg.mse_window - 1) / 2);
    for (std::size_t i = 0; i < mse.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(i + half, mse.size() - 1);
        const Moments m = population_moments(mse, lo, hi, i);
        if (m.sd < 1e-12) {
            continue;
        }
        if ((mse[i] - m.mean) / m.sd > cfg.mse_z_threshold) {
            flagged[i + 1] = true;
        }
    }

    std::vector<int> out;
    for (std::size_t t = 0; t < n; ++t) {
        if (flagged[t]) {
            out.push_back(static_cast<int>(t + 1));
        }
    }
    return out;
}

std::vector<int> flag_indicator(const std::vector<int>& flags, int frames)
{
    std::vector<int> ind(static_cast<std::size_t>(std::max(frames, 0)), 0);
    for (int f : flags) {
        if (f < 1 || f > frames) {
            throw Error("flag index out of range");
        }
        ind[static_cast<std::size_t>(f - 1)] = 1;
    }
    return ind;
}

std::vector<double> anomaly_density(const std::vector<int>& indicator, int window)
{
    if (window < 1) {
        throw Error("density window must be positive");
    }
    const long n = static_cast<long>(indicator.size());
    std::vector<long> prefix(indicator.size() + 1, 0);
    for (long i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + (indicator[i] != 0);
    }
    std::vector<double> rho(indicator.size());
    for (long t = 0; t < n; ++t) {
        const long lo = std::max(0L, t - (window - 1) / 2);
        const long hi = std::min(n - 1, t - (window - 1) / 2 + window - 1);
        rho[t] = hi >= lo ? static_cast<double>(prefix[hi + 1] - prefix[lo]) / window : 0.0;
    }
    return rho;
}

std::vector<Segment> clean_segments(const std::vector<double>& density, const FilterConfig& cfg)
{
    validate(cfg);
    std::vector<Segment> runs;
    const int n = static_cast<int>(density.size());
    for (int t = 0; t < n; ++t) {
        if (density[t] >= cfg.density_tau) {
            continue;
        }
        if (!runs.empty() && runs.back().end == t) {
            runs.back().end = t + 1;
        } else {
            runs.push_back({t + 1, t + 1});
        }
    }
    std::vector<Segment> merged;
    for (const Segment& r : runs) {
        if (!merged.empty() && r.start - merged.back().end - 1 <= cfg.merge_gap) {
            merged.back().end = r.end;
        } else {
            merged.push_back(r);
        }
    }
    std::erase_if(merged, [&cfg](const Segment& s) { return s.length() < cfg.min_len; });
    return merged;
}

RefineResult refine(const FrameSequence& seq, const FilterConfig& cfg)
{
    const FrameSeries s = frame_series(seq, cfg.percentile_rule);
    RefineResult out;
    out.flags = detect_anomalies(s.light, s.mse, cfg);
    const auto rho = anomaly_density(flag_indicator(out.flags, static_cast<int>(seq.size())), cfg.density_window);
    out.segments = clean_segments(rho, cfg);
    return out;
}

}  // namespace wmb

#pragma once

// Straight-line reference transcriptions used only by the tests. Nothing here
// calls into the library, so agreement with it is an independent check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double cosine(const Vec& a, const Vec& b)
{
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (std::sqrt(na) < 1e-12 || std::sqrt(nb) < 1e-12) {
        return 0.0;
    }
    double c = dot / (std::sqrt(na) * std::sqrt(nb));
    if (c > 1) c = 1;
    if (c < -1) c = -1;
    return c;
}

inline double soft(double x, double lambda)
{
    return (std::exp(lambda * x) - 1.0) / (std::exp(lambda) - 1.0);
}

inline double logt(double x, double k)
{
    return std::log(1.0 + k * x) / std::log(1.0 + k);
}

inline Vec forward_weights(int T, double c)
{
    Vec w;
    double z = 0;
    for (int d = 1; d <= T - 1; ++d) {
        w.push_back(std::exp(-c * d));
        z += w.back();
    }
    for (double& v : w) v /= z;
    return w;
}

inline Vec mirror_weights(int T, double gamma, bool formula)
{
    Vec w;
    double z = 0;
    for (int t = 1; t <= T / 2; ++t) {
        const double d = formula ? std::fabs(T / 2.0 - t) : (t - 1.0);
        w.push_back(std::exp(-gamma * d));
        z += w.back();
    }
    for (double& v : w) v /= z;
    return w;
}

inline double brightness(const std::vector<Vec>& v, double lambda, double alpha)
{
    const int T = static_cast<int>(v.size());
    const Vec w = forward_weights(T, alpha);
    double s = 0;
    for (int d = 1; d <= T - 1; ++d) {
        s += w[d - 1] * soft(cosine(v[d], v[0]), lambda);
    }
    return s;
}

inline double color(const std::vector<Vec>& h, double lambda, double beta)
{
    const int T = static_cast<int>(h.size());
    const Vec w = forward_weights(T, beta);
    double s = 0;
    for (int d = 1; d <= T - 1; ++d) {
        const double sbar = (cosine(h[d], h[0]) + cosine(h[d], h[d - 1])) / 2.0;
        s += w[d - 1] * soft(sbar, lambda);
    }
    return s;
}

inline double sharpness(const std::vector<Vec>& g, const Vec& noise, double tau, int window, double alpha, double k)
{
    const int T = static_cast<int>(g.size());
    const Vec w = forward_weights(T, alpha);
    int consecutive = 0;
    bool trig = false;
    // Frame 1 contributes to the consecutive count but not to the score.
    if (noise[0] > tau) consecutive = 1;
    if (consecutive >= window) trig = true;
    double s = 0;
    for (int t = 2; t <= T; ++t) {
        if (noise[t - 1] > tau) consecutive += 1; else consecutive = 0;
        if (consecutive >= window) trig = true;
        const double c = cosine(g[t - 1], g[0]);
        double m;
        if (!trig && noise[t - 1] < tau) {
            m = c;
        } else {
            m = 1.0 - c;
            if (m < 0) m = 0;
            if (m > 0.2) m = 0.2;
        }
        s += w[t - 2] * logt(m, k);
    }
    return s;
}

/// Mean L(|cos|) over tangent pairs.
inline double tangent_score(const std::vector<Vec>& a, const std::vector<Vec>& b, double k)
{
    double s = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        s += logt(std::fabs(cosine(a[t], b[t])), k);
    }
    return s / static_cast<double>(a.size());
}

inline double memory(const Vec& pair_mse, int T, double a, double kval, double kexp, double gamma, bool formula)
{
    const Vec w = mirror_weights(T, gamma, formula);
    double s = 0;
    for (int t = 1; t <= T / 2; ++t) {
        double e = pair_mse[t - 1] - a;
        if (e < 0) e = 0;
        s += w[t - 1] * std::exp(-kval * std::pow(e, kexp));
    }
    return s;
}

/// Positions are camera translations per frame, one 3-vector each.
inline double alignment(const std::vector<std::array<double, 3>>& pos, double k)
{
    const int T = static_cast<int>(pos.size());
    auto v = [&](int i) {  // 1-based displacement index
        return Vec{pos[i][0] - pos[i - 1][0], pos[i][1] - pos[i - 1][1], pos[i][2] - pos[i - 1][2]};
    };
    double s = 0;
    for (int t = 1; t <= T / 2; ++t) {
        int j = T - t + 1;
        if (j > T - 1) j = T - 1;
        const Vec a = v(t);
        Vec b = v(j);
        for (double& x : b) x = -x;
        const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        const double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        double c = (na < 1e-12 && nb < 1e-12) ? 1.0 : cosine(a, b);
        if (c < 0) c = 0;
        s += logt(c, k);
    }
    return s / (T / 2);
}

struct RawFrame {
    int w = 0;
    int h = 0;
    std::vector<std::uint8_t> rgb;
};

inline std::vector<int> gray(const RawFrame& f)
{
    std::vector<int> g;
    for (std::size_t i = 0; i < f.rgb.size(); i += 3) {
        g.push_back(static_cast<int>(std::floor(0.299 * f.rgb[i] + 0.587 * f.rgb[i + 1] + 0.114 * f.rgb[i + 2] + 0.5)));
    }
    return g;
}

/// Nearest-rank 95th percentile with exact integer rank ceil(95 N / 100).
inline double p95(std::vector<int> g)
{
    std::sort(g.begin(), g.end());
    const std::size_t n = g.size();
    const std::size_t rank = (95 * n + 99) / 100;
    return g[rank - 1];
}

inline double mse(const RawFrame& a, const RawFrame& b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.rgb.size(); ++i) {
        const double d = double(a.rgb[i]) - double(b.rgb[i]);
        s += d * d;
    }
    return s / a.rgb.size();
}

struct FilterParams {
    double k_sigma = 3, floor = 10, z = 4;
    int mse_window = 31, W = 31, G = 10, Lmin = 81;
    double tau = 0.06;
};

struct Seg {
    int start, end;
    bool operator==(const Seg&) const = default;
};

/// Flags (1-based) and clean segments for a raw frame sequence.
inline std::pair<std::vector<int>, std::vector<Seg>> refine(const std::vector<RawFrame>& frames, const FilterParams& p)
{
    const int T = static_cast<int>(frames.size());
    std::vector<double> light(T + 1), m(T);  // 1-based; m[t] between t and t+1
    for (int t = 1; t <= T; ++t) light[t] = p95(gray(frames[t - 1]));
    for (int t = 1; t <= T - 1; ++t) m[t] = mse(frames[t - 1], frames[t]);

    std::vector<int> flag(T + 2, 0);

    std::vector<double> res(T + 1);
    for (int t = 1; t <= T; ++t) {
        std::vector<double> nb;
        for (int u = t - 1; u <= t + 1; ++u)
            if (u >= 1 && u <= T) nb.push_back(light[u]);
        std::sort(nb.begin(), nb.end());
        const double med = nb.size() == 3 ? nb[1] : nb.size() == 2 ? (nb[0] + nb[1]) / 2 : nb[0];
        res[t] = std::fabs(light[t] - med);
    }
    double mean = 0;
    for (int t = 1; t <= T; ++t) mean += res[t];
    mean /= T;
    double var = 0;
    for (int t = 1; t <= T; ++t) var += (res[t] - mean) * (res[t] - mean);
    const double sd = std::sqrt(var / T);
    for (int t = 1; t <= T; ++t)
        if (res[t] > std::max(p.k_sigma * sd, p.floor)) flag[t] = 1;

    const int half = (p.mse_window - 1) / 2;
    for (int t = 1; t <= T - 1; ++t) {
        double s = 0;
        int n = 0;
        for (int u = t - half; u <= t + half; ++u)
            if (u >= 1 && u <= T - 1 && u != t) { s += m[u]; ++n; }
        if (n == 0) continue;
        const double mu = s / n;
        double v = 0;
        for (int u = t - half; u <= t + half; ++u)
            if (u >= 1 && u <= T - 1 && u != t) v += (m[u] - mu) * (m[u] - mu);
        const double sig = std::sqrt(v / n);
        if (sig < 1e-12) continue;
        if ((m[t] - mu) / sig > p.z) flag[t + 1] = 1;
    }

    std::vector<int> flags;
    for (int t = 1; t <= T; ++t)
        if (flag[t]) flags.push_back(t);

    std::vector<double> rho(T + 1);
    for (int t = 1; t <= T; ++t) {
        int c = 0;
        const int lo = t - (p.W - 1) / 2;
        for (int u = lo; u <= lo + p.W - 1; ++u)
            if (u >= 1 && u <= T) c += flag[u];
        rho[t] = static_cast<double>(c) / p.W;
    }

    std::vector<Seg> runs;
    for (int t = 1; t <= T; ++t) {
        if (rho[t] < p.tau) {
            if (!runs.empty() && runs.back().end == t - 1) runs.back().end = t;
            else runs.push_back({t, t});
        }
    }
    std::vector<Seg> merged;
    for (const Seg& r : runs) {
        if (!merged.empty() && r.start - merged.back().end - 1 <= p.G) merged.back().end = r.end;
        else merged.push_back(r);
    }
    std::vector<Seg> out;
    for (const Seg& s : merged)
        if (s.end - s.start + 1 >= p.Lmin) out.push_back(s);
    return {flags, out};
}

/// Direct-window SSIM over every valid 11x11 placement.
inline double ssim(const std::vector<int>& a, const std::vector<int>& b, int w, int h)
{
    const double C1 = 6.5025, C2 = 58.5225;
    double g[11];
    double z = 0;
    for (int i = 0; i < 11; ++i) {
        g[i] = std::exp(-((i - 5) * (i - 5)) / 4.5);
        z += g[i];
    }
    for (double& v : g) v /= z;
    double total = 0;
    int count = 0;
    for (int y0 = 0; y0 + 11 <= h; ++y0) {
        for (int x0 = 0; x0 + 11 <= w; ++x0) {
            double mx = 0, my = 0;
            for (int dy = 0; dy < 11; ++dy)
                for (int dx = 0; dx < 11; ++dx) {
                    const double wt = g[dy] * g[dx];
                    mx += wt * a[(y0 + dy) * w + x0 + dx];
                    my += wt * b[(y0 + dy) * w + x0 + dx];
                }
            double sxx = 0, syy = 0, sxy = 0;
            for (int dy = 0; dy < 11; ++dy)
                for (int dx = 0; dx < 11; ++dx) {
                    const double wt = g[dy] * g[dx];
                    const double xa = a[(y0 + dy) * w + x0 + dx] - mx;
                    const double yb = b[(y0 + dy) * w + x0 + dx] - my;
                    sxx += wt * xa * xa;
                    syy += wt * yb * yb;
                    sxy += wt * xa * yb;
                }
            total += ((2 * mx * my + C1) * (2 * sxy + C2)) / ((mx * mx + my * my + C1) * (sxx + syy + C2));
            ++count;
        }
    }
    return total / count;
}

}  // namespace oracle

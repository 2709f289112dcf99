#include "wmb/trajectory_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include "wmb/ssim.hpp"

namespace wmb {
namespace {

constexpr double kMinDisplacement = 1e-9;

Eigen::Vector3d net_displacement(const PoseSequence& poses)
{
    return poses.back().translation - poses.front().translation;
}

void require_poses(const PoseSequence& poses)
{
    if (poses.size() < 2) {
        throw Error("trajectory needs at least two poses");
    }
}

}  // namespace

TangentSeries tangent_series(const PoseSequence& poses)
{
    require_poses(poses);
    TangentSeries out(poses.size() - 1);
    auto prev = poses.front().flatten();
    for (std::size_t t = 1; t < poses.size(); ++t) {
        const auto cur = poses[t].flatten();
        for (std::size_t i = 0; i < 12; ++i) {
            out[t - 1][i] = cur[i] - prev[i];
        }
        prev = cur;
    }
    return out;
}

PoseSequence align_to_reference(const PoseSequence& raw, const PoseSequence& reference)
{
    require_poses(raw);
    require_poses(reference);
    const Eigen::Vector3d from = net_displacement(raw);
    const Eigen::Vector3d to = net_displacement(reference);
    if (from.norm() < kMinDisplacement || to.norm() < kMinDisplacement) {
        return raw;
    }
    const Eigen::Matrix3d q = Eigen::Quaterniond::FromTwoVectors(from, to).toRotationMatrix();
    PoseSequence out;
    out.reserve(raw.size());
    for (const Pose& p : raw) {
        Pose r;
        r.rotation = q * p.rotation;
        r.translation = q * p.translation;
        out.push_back(r);
    }
    return out;
}

double tangent_agreement(const TangentSeries& a, const TangentSeries& b, const TrajectoryOptions& opts)
{
    if (a.size() != b.size()) {
        throw Error("trajectory length mismatch");
    }
    if (a.empty()) {
        throw Error("trajectory needs at least two poses");
    }
    double total = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double c = cosine_sim(a[t], b[t]);
        total += upper_convex_log(opts.signed_cosine ? std::max(0.0, c) : std::abs(c), opts.k);
    }
    return total / static_cast<double>(a.size());
}

double trajectory_accuracy(const PoseSequence& sync, const PoseSequence& cmd, const TrajectoryOptions& opts)
{
    if (sync.size() != cmd.size()) {
        throw Error("trajectory length mismatch");
    }
    return tangent_agreement(tangent_series(sync), tangent_series(cmd), opts);
}

double trajectory_tolerance(const PoseSequence& sync, const PoseSequence& gt, const TrajectoryOptions& opts)
{
    return trajectory_accuracy(sync, gt, opts);
}

Frame blend_reconstruct(const Frame& prev, const Frame& next, std::size_t)
{
    if (prev.width() != next.width() || prev.height() != next.height()) {
        throw Error("frame dimension mismatch");
    }
    const auto a = prev.data();
    const auto b = next.data();
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = static_cast<std::uint8_t>((a[i] + b[i] + 1) / 2);
    }
    return Frame(prev.width(), prev.height(), std::move(out));
}

double reconstruction_score(const Frame& original, const Frame& rebuilt, const SmoothnessConfig& cfg,
                            const PerceptualDistance& perceptual)
{
    if (cfg.w_ssim < 0.0 || cfg.w_mse < 0.0 || cfg.w_perceptual < 0.0 || !(cfg.sigma_mse > 0.0)) {
        throw Error("smoothness weights must be non-negative and sigma_mse positive");
    }
    double w_ssim = cfg.w_ssim;
    double w_mse = cfg.w_mse;
    double w_perc = perceptual ? cfg.w_perceptual : 0.0;
    const double total = w_ssim + w_mse + w_perc;
    if (!(total > 0.0)) {
        throw Error("smoothness weights sum to zero");
    }
    w_ssim /= total;
    w_mse /= total;
    w_perc /= total;

    double score = 0.0;
    if (w_ssim > 0.0) {
        score += w_ssim * std::clamp(ssim(original, rebuilt), 0.0, 1.0);
    }
    if (w_mse > 0.0) {
        score += w_mse * std::exp(-frame_mse(original, rebuilt) / (cfg.sigma_mse * cfg.sigma_mse));
    }
    if (w_perc > 0.0) {
        score += w_perc * (1.0 - std::clamp(perceptual(original, rebuilt), 0.0, 1.0));
    }
    return std::clamp(score, 0.0, 1.0);
}

double motion_smoothness(const FrameSequence& seq, const Reconstructor& recon, const SmoothnessConfig& cfg,
                         const PerceptualDistance& perceptual)
{
    if (seq.size() < 3) {
        throw Error("motion smoothness needs at least three frames");
    }
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < seq.size(); i += 2) {
        const Frame rebuilt = recon(seq[i - 1], seq[i + 1], i);
        total += reconstruction_score(seq[i], rebuilt, cfg, perceptual);
        ++count;
    }
    return total / static_cast<double>(count);
}

}  // namespace wmb

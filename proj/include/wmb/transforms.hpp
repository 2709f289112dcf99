#pragma once

#include <span>
#include <vector>

namespace wmb {

inline constexpr double kDefaultLambda = 5.0;
inline constexpr double kDefaultLogK = 15.0;
inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kDefaultBeta = 0.15;
inline constexpr double kDefaultGamma = 0.05;

/// Cosine of the angle between a and b, clamped to [-1,1]. Returns 0 when
/// either vector has (near) zero norm.
double cosine_sim(std::span<const double> a, std::span<const double> b);

/// (e^{lambda x} - 1) / (e^{lambda} - 1): convex, maps [0,1] onto [0,1].
double modified_softmax(double x, double lambda = kDefaultLambda);

/// ln(1 + k x) / ln(1 + k): concave, maps [0,1] onto [0,1].
double upper_convex_log(double x, double k = kDefaultLogK);

/// Normalized e^{-coeff d} over distances d = 1..frames-1.
std::vector<double> decay_weights(int frames, double coeff);

enum class MemoryWeightMode {
    Prose,    ///< largest weight at the outermost pair, e^{-gamma (t-1)}
    Formula,  ///< e^{-gamma |T/2 - t|}, largest near the middle
};

/// Normalized weights for mirrored pairs t = 1..floor(frames/2).
std::vector<double> inverse_decay_weights(int frames, double gamma, MemoryWeightMode mode = MemoryWeightMode::Prose);

}  // namespace wmb

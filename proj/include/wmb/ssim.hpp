#pragma once

#include "wmb/frame.hpp"

namespace wmb {

/// Single-scale SSIM on 8-bit grayscale: 11x11 Gaussian window (sigma 1.5),
/// C1 = (0.01*255)^2, C2 = (0.03*255)^2, mean over the valid region. Images
/// narrower or shorter than the window are compared with one global window.
double ssim(const GrayFrame& a, const GrayFrame& b);

inline double ssim(const Frame& a, const Frame& b) { return ssim(to_grayscale(a), to_grayscale(b)); }

}  // namespace wmb

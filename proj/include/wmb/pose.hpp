#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wmb/frame.hpp"

namespace wmb {

/// Rigid transform [R|t]. Pose files hold world-to-camera extrinsics.
struct Pose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose identity() { return {}; }

    /// Row-major flattening of the 3x4 block: r00 r01 r02 t0 r10 ... t2.
    std::array<double, 12> flatten() const;
    Pose inverse() const;
    Pose operator*(const Pose& rhs) const;
};

using PoseSequence = std::vector<Pose>;

enum class PoseFormat {
    Matrix3x4,     ///< 12 values, row-major [R|t]
    Matrix4x4,     ///< 16 values, row-major homogeneous, last row 0 0 0 1
    SevenElement,  ///< tx ty tz qw qx qy qz
    SixDof,        ///< tx ty tz roll pitch yaw (radians, intrinsic Z-Y-X)
};

PoseFormat parse_pose_format(std::string_view name);
std::string_view to_string(PoseFormat format);

/// Thrown for malformed pose rows; carries the 1-based line number.
class PoseParseError : public Error {
public:
    PoseParseError(std::size_t line, const std::string& what)
        : Error("pose line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One pose per line, values separated by whitespace and/or commas; blank lines
/// and lines starting with '#' are skipped. Rotations are projected onto SO(3).
PoseSequence parse_poses(PoseFormat format, std::string_view text);
std::string serialize_poses(PoseFormat format, const PoseSequence& poses);

/// Nearest rotation in the Frobenius sense (polar decomposition via SVD).
Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m);

/// tx ty tz qw qx qy qz with qw >= 0.
std::array<double, 7> to_quaternion(const Pose& pose);
Pose from_quaternion(const std::array<double, 7>& values);

struct SixDof {
    std::array<double, 6> values{};  ///< tx ty tz roll pitch yaw
    bool gimbal_locked = false;      ///< pitch at +-pi/2; yaw folded into roll
};

SixDof to_sixdof(const Pose& pose);
Pose from_sixdof(const std::array<double, 6>& values);

/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
Eigen::Matrix3d rotation_from_euler(double roll, double pitch, double yaw);

enum class HandednessPolicy {
    Warn,     ///< apply the signs as given, report the flip
    NegateX,  ///< additionally negate the x sign so the sign product is +1
};

struct RectifyResult {
    PoseSequence poses;
    std::array<int, 3> applied_signs{1, 1, 1};
    bool handedness_flip = false;  ///< the requested sign product was -1
};

/// Conjugates every pose by D = diag(signs): R' = D R D, t' = D t.
RectifyResult rectify(const PoseSequence& poses, const std::array<int, 3>& axis_signs,
                      HandednessPolicy policy = HandednessPolicy::Warn);

inline constexpr std::size_t kClipLength = 81;

/// Consecutive non-overlapping windows of `length` poses; the remainder is dropped.
std::vector<PoseSequence> clip_poses(const PoseSequence& poses, std::size_t length = kClipLength);

inline std::vector<PoseSequence> clip_81(const PoseSequence& poses) { return clip_poses(poses, kClipLength); }

PoseSequence invert_all(const PoseSequence& poses);

/// Frobenius norm of R_a - R_b.
double rotation_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

}  // namespace wmb

#include "wmb/pose.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/SVD>

namespace wmb {
namespace {

constexpr double kBottomRowTolerance = 1e-6;
constexpr double kGimbalThreshold = 1e-9;

std::size_t arity(PoseFormat format)
{
    switch (format) {
    case PoseFormat::Matrix3x4: return 12;
    case PoseFormat::Matrix4x4: return 16;
    case PoseFormat::SevenElement: return 7;
    case PoseFormat::SixDof: return 6;
    }
    return 0;
}

std::vector<double> split_values(std::string_view line, std::size_t line_no)
{
    std::vector<double> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',' && line[j] != '\r') {
            ++j;
        }
        const std::string token(line.substr(i, j - i));
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) {
            throw PoseParseError(line_no, "not a number: '" + token + "'");
        }
        if (!std::isfinite(v)) {
            throw PoseParseError(line_no, "non-finite value");
        }
        out.push_back(v);
        i = j;
    }
    return out;
}

Pose pose_from_row(PoseFormat format, const std::vector<double>& v, std::size_t line_no)
{
    Pose p;
    switch (format) {
    case PoseFormat::Matrix3x4:
    case PoseFormat::Matrix4x4: {
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                m(r, c) = v[4 * r + c];
            }
            p.translation(r) = v[4 * r + 3];
        }
        if (format == PoseFormat::Matrix4x4) {
            const bool ok = std::abs(v[12]) <= kBottomRowTolerance && std::abs(v[13]) <= kBottomRowTolerance &&
                            std::abs(v[14]) <= kBottomRowTolerance && std::abs(v[15] - 1.0) <= kBottomRowTolerance;
            if (!ok) {
                throw PoseParseError(line_no, "4x4 bottom row must be 0 0 0 1");
            }
        }
        p.rotation = nearest_rotation(m);
        return p;
    }
    case PoseFormat::SevenElement: {
        const double norm = std::sqrt(v[3] * v[3] + v[4] * v[4] + v[5] * v[5] + v[6] * v[6]);
        if (norm < 1e-12) {
            throw PoseParseError(line_no, "zero quaternion");
        }
        return from_quaternion({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    case PoseFormat::SixDof:
        return from_sixdof({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    return p;
}

void append_number(std::string& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    out += buf;
}

}  // namespace

std::array<double, 12> Pose::flatten() const
{
    std::array<double, 12> out{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out[4 * r + c] = rotation(r, c);
        }
        out[4 * r + 3] = translation(r);
    }
    return out;
}

Pose Pose::inverse() const
{
    Pose inv;
    inv.rotation = rotation.transpose();
    inv.translation = -(inv.rotation * translation);
    return inv;
}

Pose Pose::operator*(const Pose& rhs) const
{
    Pose out;
    out.rotation = rotation * rhs.rotation;
    out.translation = rotation * rhs.translation + translation;
    return out;
}

PoseFormat parse_pose_format(std::string_view name)
{
    if (name == "matrix3x4") return PoseFormat::Matrix3x4;
    if (name == "matrix4x4") return PoseFormat::Matrix4x4;
    if (name == "seven-element") return PoseFormat::SevenElement;
    if (name == "six-dof") return PoseFormat::SixDof;
    throw Error("unknown pose format '" + std::string(name) +
                "' (expected matrix3x4, matrix4x4, seven-element or six-dof)");
}

std::string_view to_string(PoseFormat format)
{
    switch (format) {
    case PoseFormat::Matrix3x4: return "matrix3x4";
    case PoseFormat::Matrix4x4: return "matrix4x4";
    case PoseFormat::SevenElement: return "seven-element";
    case PoseFormat::SixDof: return "six-dof";
    }
    return "?";
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m)
{
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
    return u * d * v.transpose();
}

PoseSequence parse_poses(PoseFormat format, std::string_view text)
{
    PoseSequence out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        const auto values = split_values(line, line_no);
        if (values.size() != arity(format)) {
            throw PoseParseError(line_no, "expected " + std::to_string(arity(format)) + " values for " +
                                              std::string(to_string(format)) + ", got " +
                                              std::to_string(values.size()));
        }
        out.push_back(pose_from_row(format, values, line_no));
    }
    return out;
}

std::string serialize_poses(PoseFormat format, const PoseSequence& poses)
{
    std::string out;
    for (const Pose& p : poses) {
        std::vector<double> row;
        switch (format) {
        case PoseFormat::Matrix3x4: {
            const auto f = p.flatten();
            row.assign(f.begin(), f.end());
            break;
        }
        case PoseFormat::Matrix4x4: {
            const auto f = p.flatten();
            row.assign(f.begin(), f.end());
            row.insert(row.end(), {0.0, 0.0, 0.0, 1.0});
            break;
        }
        case PoseFormat::SevenElement: {
            const auto q = to_quaternion(p);
            row.assign(q.begin(), q.end());
            break;
        }
        case PoseFormat::SixDof: {
            const auto s = to_sixdof(p).values;
            row.assign(s.begin(), s.end());
            break;
        }
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ' ';
            }
            append_number(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::array<double, 7> to_quaternion(const Pose& pose)
{
    Eigen::Quaterniond q(pose.rotation);
    q.normalize();
    if (q.w() < 0.0) {
        q.coeffs() *= -1.0;
    }
    return {pose.translation.x(), pose.translation.y(), pose.translation.z(), q.w(), q.x(), q.y(), q.z()};
}

Pose from_quaternion(const std::array<double, 7>& v)
{
    Eigen::Quaterniond q(v[3], v[4], v[5], v[6]);
    const double norm = q.norm();
    if (norm < 1e-12) {
        throw Error("zero quaternion");
    }
    q.coeffs() /= norm;
    Pose p;
    p.rotation = nearest_rotation(q.toRotationMatrix());
    p.translation = Eigen::Vector3d(v[0], v[1], v[2]);
    return p;
}

Eigen::Matrix3d rotation_from_euler(double roll, double pitch, double yaw)
{
    return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
        .toRotationMatrix();
}

SixDof to_sixdof(const Pose& pose)
{
    const Eigen::Matrix3d& r = pose.rotation;
    SixDof out;
    const double cos_pitch = std::hypot(r(0, 0), r(1, 0));
    const double pitch = std::atan2(-r(2, 0), cos_pitch);
    double roll;
    double yaw;
    if (cos_pitch < kGimbalThreshold) {
        // With yaw pinned to zero: R = Ry(pitch) Rx(roll).
        out.gimbal_locked = true;
        yaw = 0.0;
        roll = std::atan2(-r(1, 2), r(1, 1));
    } else {
        roll = std::atan2(r(2, 1), r(2, 2));
        yaw = std::atan2(r(1, 0), r(0, 0));
    }
    out.values = {pose.translation.x(), pose.translation.y(), pose.translation.z(), roll, pitch, yaw};
    return out;
}

Pose from_sixdof(const std::array<double, 6>& v)
{
    Pose p;
    p.translation = Eigen::Vector3d(v[0], v[1], v[2]);
    p.rotation = rotation_from_euler(v[3], v[4], v[5]);
    return p;
}

RectifyResult rectify(const PoseSequence& poses, const std::array<int, 3>& axis_signs, HandednessPolicy policy)
{
    for (int s : axis_signs) {
        if (s != 1 && s != -1) {
            throw Error("axis signs must be +1 or -1");
        }
    }
    RectifyResult out;
    out.applied_signs = axis_signs;
    out.handedness_flip = axis_signs[0] * axis_signs[1] * axis_signs[2] < 0;
    if (out.handedness_flip && policy == HandednessPolicy::NegateX) {
        out.applied_signs[0] = -out.applied_signs[0];
    }
    const Eigen::Vector3d d(out.applied_signs[0], out.applied_signs[1], out.applied_signs[2]);
    const Eigen::Matrix3d dm = d.asDiagonal();
    out.poses.reserve(poses.size());
    for (const Pose& p : poses) {
        Pose q;
        q.rotation = dm * p.rotation * dm;
        q.translation = dm * p.translation;
        out.poses.push_back(q);
    }
    return out;
}

std::vector<PoseSequence> clip_poses(const PoseSequence& poses, std::size_t length)
{
    if (length == 0) {
        throw Error("clip length must be positive");
    }
    std::vector<PoseSequence> clips;
    for (std::size_t start = 0; start + length <= poses.size(); start += length) {
        clips.emplace_back(poses.begin() + start, poses.begin() + start + length);
    }
    return clips;
}

PoseSequence invert_all(const PoseSequence& poses)
{
    PoseSequence out;
    out.reserve(poses.size());
    for (const Pose& p : poses) {
        out.push_back(p.inverse());
    }
    return out;
}

double rotation_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b)
{
    return (a - b).norm();
}

}  // namespace wmb

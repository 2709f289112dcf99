#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "wmb/pose.hpp"

using namespace wmb;

namespace {

Pose random_pose(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
    q.normalize();
    Pose p;
    p.rotation = q.toRotationMatrix();
    p.translation = Eigen::Vector3d(n(rng), n(rng), n(rng));
    return p;
}

double pose_error(const Pose& a, const Pose& b)
{
    return rotation_distance(a.rotation, b.rotation) + (a.translation - b.translation).norm();
}

}  // namespace

TEST_CASE("format names round-trip")
{
    for (auto f : {PoseFormat::Matrix3x4, PoseFormat::Matrix4x4, PoseFormat::SevenElement, PoseFormat::SixDof}) {
        CHECK(parse_pose_format(to_string(f)) == f);
    }
    CHECK_THROWS_AS(parse_pose_format(""), Error);
    CHECK_THROWS_AS(parse_pose_format("quat"), Error);
}

TEST_CASE("every format serializes and parses back to the same poses")
{
    std::mt19937_64 rng(21);
    PoseSequence poses;
    for (int i = 0; i < 25; ++i) poses.push_back(random_pose(rng));
    for (auto f : {PoseFormat::Matrix3x4, PoseFormat::Matrix4x4, PoseFormat::SevenElement, PoseFormat::SixDof}) {
        const PoseSequence back = parse_poses(f, serialize_poses(f, poses));
        REQUIRE(back.size() == poses.size());
        for (std::size_t i = 0; i < poses.size(); ++i) {
            CHECK(pose_error(back[i], poses[i]) < 1e-9);
        }
    }
}

TEST_CASE("parser accepts commas and comments and reports bad lines")
{
    const auto p = parse_poses(PoseFormat::SevenElement, "# header\n1, 2, 3, 1, 0, 0, 0\n\n4 5 6 2 0 0 0\n");
    REQUIRE(p.size() == 2);
    CHECK(p[1].translation.x() == 4.0);
    CHECK(rotation_distance(p[1].rotation, Eigen::Matrix3d::Identity()) < 1e-12);

    try {
        parse_poses(PoseFormat::Matrix3x4, "1 0 0 0 0 1 0 0 0 0 1 0\n1 2 3\n");
        FAIL("expected a parse error");
    } catch (const PoseParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_poses(PoseFormat::Matrix3x4, "1 0 0 0 0 1 0 0 0 0 1 nan\n"), PoseParseError);
    CHECK_THROWS_AS(parse_poses(PoseFormat::SevenElement, "0 0 0 0 0 0 0\n"), PoseParseError);
    CHECK_THROWS_AS(parse_poses(PoseFormat::Matrix4x4, "1 0 0 0 0 1 0 0 0 0 1 0 0 0 0 2\n"), PoseParseError);
    CHECK_THROWS_AS(parse_poses(PoseFormat::Matrix3x4, "1 0 0 0 0 1 0 0 0 0 1 zz\n"), PoseParseError);
}

TEST_CASE("near-rotations are projected onto SO(3)")
{
    Eigen::Matrix3d m = rotation_from_euler(0.3, -0.2, 1.1);
    m(0, 1) += 1e-3;
    const Eigen::Matrix3d r = nearest_rotation(m);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0));
    CHECK(rotation_distance(r, m) < 2e-3);
    // Reflections map to a proper rotation.
    CHECK(nearest_rotation(Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()).determinant() ==
          doctest::Approx(1.0));
}

TEST_CASE("quaternions are scalar-first with a non-negative scalar")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const Pose p = random_pose(rng);
        const auto q = to_quaternion(p);
        CHECK(q[3] >= 0.0);
        CHECK(std::hypot(q[3], q[4], q[5]) <= 1.0 + 1e-12);
        CHECK(pose_error(from_quaternion(q), p) < 1e-9);
    }
    Pose half_turn;
    half_turn.rotation = Eigen::AngleAxisd(std::numbers::pi, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    CHECK(std::fabs(to_quaternion(half_turn)[3]) < 1e-12);
}

TEST_CASE("euler angles follow the Z-Y-X convention")
{
    const double roll = 0.1, pitch = 0.2, yaw = 0.3;
    const Eigen::Matrix3d expected = (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                                      Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
                                      Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
                                         .toRotationMatrix();
    CHECK(rotation_distance(rotation_from_euler(roll, pitch, yaw), expected) < 1e-12);
    Pose p;
    p.rotation = expected;
    const auto s = to_sixdof(p);
    CHECK(s.values[3] == doctest::Approx(roll));
    CHECK(s.values[4] == doctest::Approx(pitch));
    CHECK(s.values[5] == doctest::Approx(yaw));
    CHECK_FALSE(s.gimbal_locked);
}

TEST_CASE("gimbal lock folds yaw into roll and still reconstructs the rotation")
{
    for (double sign : {1.0, -1.0}) {
        Pose p;
        p.rotation = rotation_from_euler(0.4, sign * std::numbers::pi / 2, -0.7);
        const auto s = to_sixdof(p);
        CHECK(s.gimbal_locked);
        CHECK(s.values[5] == 0.0);
        CHECK(rotation_distance(from_sixdof(s.values).rotation, p.rotation) < 1e-9);
    }
}

TEST_CASE("pose algebra")
{
    std::mt19937_64 rng(29);
    const Pose a = random_pose(rng);
    const Pose b = random_pose(rng);
    CHECK(pose_error(a * a.inverse(), Pose::identity()) < 1e-12);
    const Eigen::Vector3d x(0.5, -1, 2);
    CHECK(((a * b).rotation * x + (a * b).translation - (a.rotation * (b.rotation * x + b.translation) + a.translation))
              .norm() < 1e-12);
    const auto flat = a.flatten();
    CHECK(flat[3] == a.translation.x());
    CHECK(flat[4] == a.rotation(1, 0));
    const auto inv = invert_all({a, b});
    CHECK(pose_error(inv[1], b.inverse()) < 1e-15);
}

TEST_CASE("rectify conjugates by the sign matrix")
{
    std::mt19937_64 rng(31);
    const PoseSequence poses = {random_pose(rng), random_pose(rng)};
    const auto same = rectify(poses, {1, 1, 1});
    CHECK_FALSE(same.handedness_flip);
    CHECK(pose_error(same.poses[0], poses[0]) == 0.0);

    const auto flipped = rectify(poses, {1, -1, -1});
    CHECK_FALSE(flipped.handedness_flip);
    const Eigen::Matrix3d d = Eigen::Vector3d(1, -1, -1).asDiagonal();
    CHECK(rotation_distance(flipped.poses[0].rotation, d * poses[0].rotation * d) < 1e-15);
    CHECK((flipped.poses[0].translation - d * poses[0].translation).norm() < 1e-15);
    // Applying the same signs twice restores the input.
    const auto twice = rectify(flipped.poses, {1, -1, -1});
    CHECK(pose_error(twice.poses[1], poses[1]) < 1e-15);

    const auto warn = rectify(poses, {1, -1, 1});
    CHECK(warn.handedness_flip);
    CHECK(warn.applied_signs == std::array<int, 3>{1, -1, 1});
    const auto negated = rectify(poses, {1, -1, 1}, HandednessPolicy::NegateX);
    CHECK(negated.handedness_flip);
    CHECK(negated.applied_signs == std::array<int, 3>{-1, -1, 1});
    for (const Pose& p : negated.poses) CHECK(p.rotation.determinant() == doctest::Approx(1.0));
    CHECK_THROWS_AS(rectify(poses, {1, 0, 1}), Error);
}

TEST_CASE("clips are 81 consecutive poses and remainders are dropped")
{
    CHECK(clip_81(PoseSequence(80)).empty());
    CHECK(clip_81(PoseSequence(81)).size() == 1);
    CHECK(clip_81(PoseSequence(161)).size() == 1);
    CHECK(clip_81(PoseSequence(162)).size() == 2);
    PoseSequence seq(170);
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i].translation.x() = double(i);
    const auto clips = clip_81(seq);
    REQUIRE(clips.size() == 2);
    CHECK(clips[1].front().translation.x() == 81.0);
    CHECK(clips[1].back().translation.x() == 161.0);
    CHECK(clip_poses(seq, 10).size() == 17);
}

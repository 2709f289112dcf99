#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "random_frames.hpp"
#include "wmb/actions.hpp"
#include "wmb/memory_metrics.hpp"

using namespace wmb;

namespace {

std::vector<std::array<double, 3>> positions(const PoseSequence& poses)
{
    std::vector<std::array<double, 3>> out;
    for (const Pose& p : poses) out.push_back({p.translation.x(), p.translation.y(), p.translation.z()});
    return out;
}

}  // namespace

TEST_CASE("palindromic videos are perfectly symmetric")
{
    std::mt19937_64 rng(301);
    for (int half : {1, 4, 10}) {
        std::vector<Frame> frames;
        for (int t = 0; t < half; ++t) frames.push_back(testgen::random_frame(rng, 6, 6));
        std::vector<Frame> pal = frames;
        pal.push_back(testgen::random_frame(rng, 6, 6));
        pal.insert(pal.end(), frames.rbegin(), frames.rend());
        for (auto mode : {MemoryWeightMode::Prose, MemoryWeightMode::Formula}) {
            MemoryConfig cfg;
            cfg.weight_mode = mode;
            CHECK(memory_symmetry(FrameSequence(pal), cfg) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mirrored pair mse pairs frame t with frame T-t+1")
{
    std::vector<Frame> f;
    for (int t = 0; t < 5; ++t) f.push_back(Frame::filled(2, 2, 10 * t, 0, 0));
    const auto m = mirrored_pair_mse(FrameSequence(f));
    REQUIRE(m.size() == 2);
    CHECK(m[0] == doctest::Approx(1600.0 / 3));
    CHECK(m[1] == doctest::Approx(400.0 / 3));
}

TEST_CASE("memory symmetry agrees with the reference transcription")
{
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> len(2, 120);
    std::uniform_real_distribution<double> e(0, 3000);
    for (int i = 0; i < 50; ++i) {
        const int T = len(rng);
        std::vector<double> mse(T / 2);
        for (auto& v : mse) v = e(rng);
        MemoryConfig cfg;
        cfg.k_exp = (i % 3 == 0) ? 1.5 : 1.0;
        for (bool formula : {false, true}) {
            cfg.weight_mode = formula ? MemoryWeightMode::Formula : MemoryWeightMode::Prose;
            const double got = memory_symmetry(mse, T, cfg);
            CHECK(std::fabs(got - oracle::memory(mse, T, cfg.a, cfg.k_val, cfg.k_exp, cfg.gamma, formula)) < 1e-12);
            CHECK(got >= 0.0);
            CHECK(got <= 1.0);
        }
    }
}

TEST_CASE("mse below the offset is absorbed")
{
    const std::vector<double> small = {9.9, 3.0, 0.0};
    CHECK(memory_symmetry(small, 7, MemoryConfig{}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(memory_symmetry(small, 8, MemoryConfig{}), Error);
    MemoryConfig bad;
    bad.a = -1;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.k_val = 0;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("trajectory alignment of out-and-back loops")
{
    for (int id = 1; id <= kMemoryPairCount; ++id) {
        const auto loop = memory_loop(memory_pair(id), 10, 0.1, 0.05);
        CHECK(memory_trajectory_alignment(loop) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // A one-way walk never returns.
    const auto walk = to_pose_deltas(1, 0, 0.1, 0.05, 21);
    CHECK(memory_trajectory_alignment(walk) == doctest::Approx(0.0));
    CHECK_THROWS_AS(memory_trajectory_alignment(PoseSequence(2)), Error);
}

TEST_CASE("trajectory alignment agrees with the reference transcription")
{
    std::mt19937_64 rng(305);
    std::normal_distribution<double> n(0, 1);
    std::uniform_int_distribution<int> len(3, 90);
    for (int i = 0; i < 50; ++i) {
        PoseSequence poses(len(rng));
        for (auto& p : poses) p.translation = Eigen::Vector3d(n(rng), n(rng), n(rng));
        CHECK(std::fabs(memory_trajectory_alignment(poses) - oracle::alignment(positions(poses), 15.0)) < 1e-12);
    }
}

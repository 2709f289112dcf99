#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "random_frames.hpp"
#include "wmb/frame.hpp"
#include "wmb/frame_io.hpp"

using namespace wmb;

namespace {

oracle::RawFrame raw(const Frame& f)
{
    return {f.width(), f.height(), std::vector<std::uint8_t>(f.data().begin(), f.data().end())};
}

}  // namespace

TEST_CASE("grayscale matches the reference luma on random frames")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const Frame f = testgen::random_frame(rng, 9, 7);
        const GrayFrame g = to_grayscale(f);
        const auto ref = oracle::gray(raw(f));
        REQUIRE(g.pixel_count() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            CHECK(int(g.data()[k]) == ref[k]);
        }
    }
}

TEST_CASE("primary colours map to their luma")
{
    CHECK(to_grayscale(Frame::filled(1, 1, 255, 0, 0)).at(0, 0) == 76);
    CHECK(to_grayscale(Frame::filled(1, 1, 0, 255, 0)).at(0, 0) == 150);
    CHECK(to_grayscale(Frame::filled(1, 1, 0, 0, 255)).at(0, 0) == 29);
    CHECK(to_grayscale(Frame::filled(1, 1, 255, 255, 255)).at(0, 0) == 255);
}

TEST_CASE("brightness bands partition the pixels")
{
    std::vector<std::uint8_t> v = {0, 85, 86, 169, 170, 255};
    const GrayFrame g(6, 1, v);
    const auto b = brightness_vector(g);
    CHECK(b[0] == doctest::Approx(2.0 / 6));
    CHECK(b[1] == doctest::Approx(2.0 / 6));
    CHECK(b[2] == doctest::Approx(2.0 / 6));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto bv = brightness_vector(to_grayscale(testgen::random_frame(rng, 8, 8)));
        CHECK(bv[0] + bv[1] + bv[2] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(brightness_vector(g, 100, 90), Error);
}

TEST_CASE("hue vector skips gray pixels and bins saturated ones")
{
    CHECK(hue_vector(Frame::filled(4, 4, 120, 120, 120)) == HueVector{});
    const auto red = hue_vector(Frame::filled(2, 2, 255, 0, 0));
    CHECK(red[0] == 1.0);
    const auto blue = hue_vector(Frame::filled(2, 2, 0, 0, 255));
    CHECK(blue[4] == 1.0);  // 120 on the half-degree scale
    CHECK(pixel_hue(0, 255, 0) == doctest::Approx(60.0));
    CHECK(pixel_hue(10, 10, 10) < 0);

    std::mt19937_64 rng(5);
    const auto h = hue_vector(testgen::random_frame(rng, 10, 10));
    double s = 0;
    for (double x : h) s += x;
    CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("sharpness is zero on flat frames and grows with edges")
{
    const auto flat = sharpness_vector(to_grayscale(Frame::filled(6, 6, 50, 50, 50)));
    CHECK(flat[0] == 0.0);
    CHECK(flat[1] == 0.0);

    std::vector<std::uint8_t> v(5 * 5, 0);
    for (int y = 0; y < 5; ++y)
        for (int x = 3; x < 5; ++x) v[y * 5 + x] = 100;
    const auto edge = sharpness_vector(GrayFrame(5, 5, v));
    // Interior 3x3: columns 2 and 3 see a step of 100 with weights 1+2+1.
    CHECK(edge[0] == doctest::Approx(2 * 3 * 400.0));
    CHECK(edge[1] == 0.0);
    CHECK_THROWS_AS(sharpness_vector(GrayFrame(2, 2, {1, 2, 3, 4})), Error);
}

TEST_CASE("nearest-rank p95 matches the integer-rank reference for every size")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(0, 255);
    for (int n = 1; n <= 400; ++n) {
        std::vector<std::uint8_t> v(n);
        std::vector<int> vi(n);
        for (int i = 0; i < n; ++i) vi[i] = v[i] = static_cast<std::uint8_t>(d(rng));
        CHECK(p95_gray(GrayFrame(n, 1, v)) == oracle::p95(vi));
    }
}

TEST_CASE("linear percentile interpolates between ranks")
{
    const GrayFrame g(5, 1, {0, 10, 20, 30, 40});
    CHECK(percentile_gray(g, 0.5, PercentileRule::Linear) == doctest::Approx(20.0));
    CHECK(percentile_gray(g, 0.95, PercentileRule::Linear) == doctest::Approx(38.0));
    CHECK(percentile_gray(g, 0.95) == 40.0);
    CHECK_THROWS_AS(percentile_gray(g, 1.5), Error);
}

TEST_CASE("frame mse matches the reference and rejects mismatched sizes")
{
    std::mt19937_64 rng(13);
    const Frame a = testgen::random_frame(rng, 6, 5);
    const Frame b = testgen::random_frame(rng, 6, 5);
    CHECK(frame_mse(a, b) == doctest::Approx(oracle::mse(raw(a), raw(b))).epsilon(1e-12));
    CHECK(frame_mse(a, a) == 0.0);
    CHECK_THROWS_AS(frame_mse(a, testgen::random_frame(rng, 5, 5)), Error);
}

TEST_CASE("laplacian variance of a flat frame is zero")
{
    CHECK(laplacian_variance(to_grayscale(Frame::filled(8, 8, 9, 9, 9))) == 0.0);
    std::mt19937_64 rng(17);
    CHECK(laplacian_variance(to_grayscale(testgen::random_frame(rng, 8, 8))) > 0.0);
}

TEST_CASE("frame construction validates its buffer")
{
    CHECK_THROWS_AS(Frame(2, 2, std::vector<std::uint8_t>(5)), Error);
    CHECK_THROWS_AS(FrameSequence({}), Error);
    CHECK_THROWS_AS(FrameSequence({Frame::filled(2, 2, 0, 0, 0), Frame::filled(3, 2, 0, 0, 0)}), Error);
    const FrameSequence s({Frame::filled(2, 2, 0, 0, 0), Frame::filled(2, 2, 1, 1, 1), Frame::filled(2, 2, 2, 2, 2)},
                          24.0);
    const auto sub = s.slice(1, 2);
    CHECK(sub.size() == 2);
    CHECK(sub[0] == s[1]);
    CHECK(sub.fps() == 24.0);
}

TEST_CASE("packed raw and png round-trip")
{
    std::mt19937_64 rng(19);
    std::vector<Frame> frames = {testgen::random_frame(rng, 7, 3), testgen::random_frame(rng, 7, 3)};
    const auto bytes = encode_packed_raw(frames);
    CHECK(decode_packed_raw(bytes) == frames);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_packed_raw(bad), Error);
    bad = bytes;
    bad.pop_back();
    CHECK_THROWS_AS(decode_packed_raw(bad), Error);

    const auto dir = std::filesystem::temp_directory_path() / "wmb_frame_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    write_png(dir / "frame_10.png", frames[1]);
    write_png(dir / "frame_2.png", frames[0]);
    CHECK(read_png(dir / "frame_2.png") == frames[0]);
    const auto seq = load_frames(dir, 30.0);
    REQUIRE(seq.size() == 2);
    CHECK(seq[0] == frames[0]);
    CHECK(seq[1] == frames[1]);
    write_packed_raw(dir / "clip.iwfr", frames);
    CHECK(load_frames(dir / "clip.iwfr", 30.0).frames() == frames);
    CHECK_THROWS_AS(load_frames(dir / "missing.iwfr", 30.0), Error);
    std::filesystem::remove_all(dir);
}

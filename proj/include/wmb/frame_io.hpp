#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "wmb/frame.hpp"

namespace wmb {

// Packed raw layout: "IWFR", then u32 little-endian width, height and frame
// count, then width*height*3 bytes per frame.
inline constexpr std::string_view kPackedMagic = "IWFR";

std::vector<Frame> decode_packed_raw(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_packed_raw(std::span<const Frame> frames);

std::vector<Frame> read_packed_raw(const std::filesystem::path& path);
void write_packed_raw(const std::filesystem::path& path, std::span<const Frame> frames);

Frame read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Frame& frame);

/// All *.png files in `dir`, ordered by the first integer in each file name.
std::vector<Frame> read_png_directory(const std::filesystem::path& dir);

/// Directory -> PNG frames, regular file -> packed raw.
FrameSequence load_frames(const std::filesystem::path& path, double fps);

}  // namespace wmb

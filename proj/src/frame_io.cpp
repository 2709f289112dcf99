#include "wmb/frame_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>

namespace wmb {
namespace {

std::uint32_t read_u32_le(const std::uint8_t* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
}

struct FileCloser {
    void operator()(std::FILE* f) const noexcept
    {
        if (f) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::optional<long long> leading_number(const std::string& name)
{
    const auto it = std::find_if(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (it == name.end()) {
        return std::nullopt;
    }
    long long v = 0;
    for (auto j = it; j != name.end() && *j >= '0' && *j <= '9'; ++j) {
        v = v * 10 + (*j - '0');
    }
    return v;
}

}  // namespace

std::vector<Frame> decode_packed_raw(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kPackedMagic.data(), 4) != 0) {
        throw Error("not a packed raw frame file (bad magic)");
    }
    const std::uint32_t width = read_u32_le(bytes.data() + 4);
    const std::uint32_t height = read_u32_le(bytes.data() + 8);
    const std::uint32_t count = read_u32_le(bytes.data() + 12);
    if (width == 0 || height == 0) {
        throw Error("packed raw header has zero dimension");
    }
    const std::size_t frame_bytes = 3ULL * width * height;
    if (bytes.size() != 16 + frame_bytes * count) {
        throw Error("packed raw payload size does not match header");
    }
    std::vector<Frame> frames;
    frames.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto* begin = bytes.data() + 16 + i * frame_bytes;
        frames.emplace_back(static_cast<int>(width), static_cast<int>(height),
                            std::vector<std::uint8_t>(begin, begin + frame_bytes));
    }
    return frames;
}

std::vector<std::uint8_t> encode_packed_raw(std::span<const Frame> frames)
{
    if (frames.empty()) {
        throw Error("cannot encode an empty frame list");
    }
    std::vector<std::uint8_t> out(kPackedMagic.begin(), kPackedMagic.end());
    write_u32_le(out, static_cast<std::uint32_t>(frames.front().width()));
    write_u32_le(out, static_cast<std::uint32_t>(frames.front().height()));
    write_u32_le(out, static_cast<std::uint32_t>(frames.size()));
    for (const Frame& f : frames) {
        if (f.width() != frames.front().width() || f.height() != frames.front().height()) {
            throw Error("frames in a packed file must share one resolution");
        }
        out.insert(out.end(), f.data().begin(), f.data().end());
    }
    return out;
}

std::vector<Frame> read_packed_raw(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_packed_raw(bytes);
}

void write_packed_raw(const std::filesystem::path& path, std::span<const Frame> frames)
{
    const auto bytes = encode_packed_raw(frames);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Frame read_png(const std::filesystem::path& path)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw Error("cannot read PNG " + path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> rgb(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error("cannot decode PNG " + path.string() + ": " + msg);
    }
    return Frame(static_cast<int>(image.width), static_cast<int>(image.height), std::move(rgb));
}

void write_png(const std::filesystem::path& path, const Frame& frame)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frame.width());
    image.height = static_cast<png_uint_32>(frame.height());
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, frame.data().data(), 0, nullptr)) {
        throw Error("cannot write PNG " + path.string() + ": " + image.message);
    }
}

std::vector<Frame> read_png_directory(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        const auto na = leading_number(a.filename().string());
        const auto nb = leading_number(b.filename().string());
        if (na && nb && *na != *nb) {
            return *na < *nb;
        }
        if (na.has_value() != nb.has_value()) {
            return na.has_value();
        }
        return a.filename() < b.filename();
    });
    if (files.empty()) {
        throw Error("no PNG frames in " + dir.string());
    }
    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (const auto& f : files) {
        frames.push_back(read_png(f));
    }
    return frames;
}

FrameSequence load_frames(const std::filesystem::path& path, double fps)
{
    if (std::filesystem::is_directory(path)) {
        return FrameSequence(read_png_directory(path), fps);
    }
    return FrameSequence(read_packed_raw(path), fps);
}

}  // namespace wmb

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strata::percept {

/// Row-major 8-bit grayscale image.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Parses P2 (ASCII) or P5 (binary) PGM with maxval <= 255. Pixel values are
/// stored as-is.
GrayImage load_pgm(std::string_view bytes);
GrayImage load_pgm_file(const std::string& path);

/// Binary P5 encoding with maxval 255.
std::string encode_pgm(const GrayImage& image);
void write_pgm_file(const std::string& path, const GrayImage& image);

} // namespace strata::percept

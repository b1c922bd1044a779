#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pwrctv {

// Raw grayscale samples as read from a PNG (0..255 or 0..65535), column-major.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    int bit_depth = 8;
    std::vector<double> data;
};

// 8/16-bit single-channel PNG; anything with more channels is rejected.
GrayImage read_gray_png(const std::string& path);

// 8-bit RGB PNG from row-major interleaved pixels (3 bytes each).
void write_rgb8_png(const std::string& path, int rows, int cols, const std::vector<std::uint8_t>& rgb);

} // namespace pwrctv

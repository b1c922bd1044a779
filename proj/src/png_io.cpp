#include "pwrctv/png_io.hpp"

#include <cstdio>
#include <memory>

#include <png.h>

#include "pwrctv/errors.hpp"

namespace pwrctv {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

GrayImage read_gray_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw InputError("cannot open PNG file: " + path);

    png_byte sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw InputError("not a PNG file (bad signature): " + path);
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("malformed PNG file: " + path);
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);

    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int rows = static_cast<int>(png_get_image_height(png, info));
    const int cols = static_cast<int>(png_get_image_width(png, info));
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("expected single-channel grayscale PNG: " + path);
    }
    if (depth != 8 && depth != 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("unsupported PNG bit depth " + std::to_string(depth) + ": " + path);
    }

    GrayImage img;
    img.rows = rows;
    img.cols = cols;
    img.bit_depth = depth;
    img.data.resize(static_cast<std::size_t>(rows) * cols);

    png_bytepp row_ptrs = png_get_rows(png, info);
    for (int i = 0; i < rows; ++i) {
        const png_bytep row = row_ptrs[i];
        for (int j = 0; j < cols; ++j) {
            double v;
            if (depth == 8) {
                v = row[j];
            } else { // network byte order in the file
                v = static_cast<double>((static_cast<unsigned>(row[2 * j]) << 8) | row[2 * j + 1]);
            }
            img.data[static_cast<std::size_t>(j) * rows + i] = v;
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_rgb8_png(const std::string& path, int rows, int cols, const std::vector<std::uint8_t>& rgb) {
    if (rgb.size() != static_cast<std::size_t>(rows) * cols * 3) {
        throw InputError("write_rgb8_png: buffer size does not match dimensions");
    }
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw InputError("cannot create PNG file: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw InputError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw InputError("PNG write failed: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, cols, rows, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int i = 0; i < rows; ++i) {
        png_write_row(png, const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(i) * cols * 3));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace pwrctv

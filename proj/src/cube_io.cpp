#include "pwrctv/cube_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "pwrctv/errors.hpp"
#include "pwrctv/png_io.hpp"
#include "pwrctv/resample.hpp"

namespace pwrctv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool ends_with_icase(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

std::string default_data_path(const std::string& header_path) {
    fs::path p(header_path);
    p.replace_extension(".raw");
    return p.string();
}

std::size_t dtype_size(const std::string& dtype) {
    if (dtype == "float32le") return 4;
    if (dtype == "uint16le") return 2;
    throw InputError("unknown dtype '" + dtype + "', expected float32le or uint16le");
}

std::vector<char> read_payload(const std::string& path, std::size_t expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open payload: " + path);
    std::vector<char> buf(expected);
    in.read(buf.data(), static_cast<std::streamsize>(expected));
    const std::size_t got = static_cast<std::size_t>(in.gcount());
    if (got != expected) {
        throw InputError("truncated payload " + path + ": expected " + std::to_string(expected) +
                         " bytes, got " + std::to_string(got));
    }
    // A longer payload than declared is a header/payload mismatch as well.
    char extra;
    if (in.read(&extra, 1)) {
        throw InputError("payload " + path + " is longer than the declared " + std::to_string(expected) +
                         " bytes");
    }
    return buf;
}

HyperCube decode_payload(const CubeFileHeader& h, const std::vector<char>& buf, bool envi_row_major) {
    HyperCube cube(h.rows, h.cols, h.bands);
    const std::size_t npix = cube.spatial_size();
    const double scale = h.scale > 0.0 ? h.scale : 65535.0;
    for (int b = 0; b < h.bands; ++b) {
        double* dst = cube.band(b);
        const char* src = buf.data() + static_cast<std::size_t>(b) * npix * dtype_size(h.dtype);
        for (std::size_t k = 0; k < npix; ++k) {
            // ENVI bsq stores row-major planes; native payloads match memory order.
            std::size_t out;
            if (envi_row_major) {
                const std::size_t i = k / h.cols, j = k % h.cols;
                out = j * h.rows + i;
            } else {
                out = k;
            }
            if (h.dtype == "float32le") {
                float v;
                std::memcpy(&v, src + 4 * k, 4);
                dst[out] = static_cast<double>(v);
            } else {
                std::uint16_t v;
                std::memcpy(&v, src + 2 * k, 2);
                dst[out] = static_cast<double>(v) / scale;
            }
        }
    }
    return cube;
}

CubeFileHeader parse_native_header(const std::string& header_path) {
    std::ifstream in(header_path);
    if (!in) throw InputError("cannot open cube header: " + header_path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("malformed cube header " + header_path + ": " + e.what());
    }
    CubeFileHeader h;
    try {
        h.rows = j.at("rows").get<int>();
        h.cols = j.at("cols").get<int>();
        h.bands = j.at("bands").get<int>();
        h.dtype = j.at("dtype").get<std::string>();
        h.layout = j.value("layout", std::string("band-sequential"));
        h.scale = j.value("scale", 0.0);
        h.data_file = j.value("data", std::string());
        if (j.contains("provenance")) h.provenance = j["provenance"].dump();
    } catch (const json::exception& e) {
        throw InputError("cube header " + header_path + " missing field: " + e.what());
    }
    if (h.rows < 1 || h.cols < 1 || h.bands < 1) throw InputError("cube header has non-positive dims");
    dtype_size(h.dtype);
    if (h.layout != "band-sequential") throw InputError("unsupported layout '" + h.layout + "'");
    return h;
}

CubeFileHeader parse_envi_header(const std::string& header_path) {
    std::ifstream in(header_path);
    if (!in) throw InputError("cannot open ENVI header: " + header_path);
    CubeFileHeader h;
    int data_type = 0, byte_order = 0;
    std::string interleave = "bsq";
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(val);
        std::transform(key.begin(), key.end(), key.begin(), ::tolower);
        if (key == "samples") h.cols = std::stoi(val);
        else if (key == "lines") h.rows = std::stoi(val);
        else if (key == "bands") h.bands = std::stoi(val);
        else if (key == "data type") data_type = std::stoi(val);
        else if (key == "byte order") byte_order = std::stoi(val);
        else if (key == "interleave") {
            interleave = val;
            std::transform(interleave.begin(), interleave.end(), interleave.begin(), ::tolower);
        }
    }
    if (h.rows < 1 || h.cols < 1 || h.bands < 1) {
        throw InputError("ENVI header " + header_path + " lacks samples/lines/bands");
    }
    if (interleave != "bsq") throw InputError("only bsq ENVI interleave is supported, got " + interleave);
    if (byte_order != 0) throw InputError("only little-endian ENVI data is supported (byte order 0)");
    if (data_type == 4) h.dtype = "float32le";
    else if (data_type == 12) h.dtype = "uint16le";
    else throw InputError("unsupported ENVI data type " + std::to_string(data_type) + " (want 4 or 12)");
    h.scale = 65535.0;
    return h;
}

std::string envi_data_path(const std::string& header_path) {
    fs::path base(header_path);
    base.replace_extension();
    for (const char* ext : {"", ".img", ".dat", ".raw"}) {
        fs::path cand = base;
        cand += ext;
        if (fs::exists(cand) && fs::is_regular_file(cand)) return cand.string();
    }
    throw InputError("no payload found next to ENVI header " + header_path);
}

} // namespace

CubeFileHeader read_cube_header(const std::string& header_path) {
    return ends_with_icase(header_path, ".hdr") ? parse_envi_header(header_path)
                                                : parse_native_header(header_path);
}

void write_cube(const HyperCube& cube, const std::string& header_path, const std::string& data_path,
                const std::string& provenance) {
    const std::string dpath = data_path.empty() ? default_data_path(header_path) : data_path;

    std::vector<char> buf(cube.size() * 4);
    for (std::size_t k = 0; k < cube.size(); ++k) {
        const float v = static_cast<float>(cube.data[k]);
        std::memcpy(buf.data() + 4 * k, &v, 4);
    }
    {
        std::ofstream out(dpath, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot create payload: " + dpath);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw InputError("short write on payload: " + dpath);
    }

    json j;
    j["rows"] = cube.rows;
    j["cols"] = cube.cols;
    j["bands"] = cube.bands;
    j["dtype"] = "float32le";
    j["layout"] = "band-sequential";
    j["data"] = fs::path(dpath).filename().string();
    if (!provenance.empty()) {
        try {
            j["provenance"] = json::parse(provenance);
        } catch (const json::parse_error&) {
            j["provenance"] = provenance; // keep opaque text rather than dropping it
        }
    }
    std::ofstream out(header_path, std::ios::trunc);
    if (!out) throw InputError("cannot create cube header: " + header_path);
    out << j.dump(2) << "\n";
}

HyperCube read_cube(const std::string& header_path, const std::string& data_path) {
    const bool envi = ends_with_icase(header_path, ".hdr");
    const CubeFileHeader h = read_cube_header(header_path);
    std::string dpath = data_path;
    if (dpath.empty()) {
        if (envi) {
            dpath = envi_data_path(header_path);
        } else if (!h.data_file.empty()) {
            dpath = (fs::path(header_path).parent_path() / h.data_file).string();
        } else {
            dpath = default_data_path(header_path);
        }
    }
    const std::size_t expected =
        static_cast<std::size_t>(h.rows) * h.cols * h.bands * dtype_size(h.dtype);
    const std::vector<char> buf = read_payload(dpath, expected);
    return decode_payload(h, buf, envi);
}

PanImage read_pan(const std::string& path, int target_rows, int target_cols) {
    Eigen::ArrayXXd field;
    if (ends_with_icase(path, ".png")) {
        const GrayImage img = read_gray_png(path);
        field = Eigen::Map<const Eigen::ArrayXXd>(img.data.data(), img.rows, img.cols);
    } else {
        const HyperCube cube = read_cube(path);
        if (cube.bands != 1) {
            throw InputError("pan image must be single-band, " + path + " has " +
                             std::to_string(cube.bands) + " bands");
        }
        field = cube.band_view(0);
    }
    if (target_rows > 0 && target_cols > 0 &&
        (field.rows() != target_rows || field.cols() != target_cols)) {
        return pan_resample(field, target_rows, target_cols);
    }
    return normalize_pan(field);
}

void export_falsecolor(const HyperCube& cube, int band_r, int band_g, int band_b,
                       const std::string& path) {
    for (int b : {band_r, band_g, band_b}) {
        if (b < 0 || b >= cube.bands) {
            throw InputError("falsecolor band index " + std::to_string(b) + " out of range [0, " +
                             std::to_string(cube.bands - 1) + "]");
        }
    }
    const std::size_t npix = cube.spatial_size();
    std::vector<std::uint8_t> rgb(npix * 3);
    const int sel[3] = {band_r, band_g, band_b};
    for (int c = 0; c < 3; ++c) {
        std::vector<double> sorted(cube.band(sel[c]), cube.band(sel[c]) + npix);
        std::sort(sorted.begin(), sorted.end());
        auto percentile = [&](double p) {
            const double pos = p * static_cast<double>(npix - 1);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(lo);
            return lo + 1 < npix ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac : sorted[lo];
        };
        const double p2 = percentile(0.02);
        const double p98 = percentile(0.98);
        const double span = p98 - p2;
        const double* band = cube.band(sel[c]);
        for (int i = 0; i < cube.rows; ++i) {
            for (int j = 0; j < cube.cols; ++j) {
                const double v = band[static_cast<std::size_t>(j) * cube.rows + i];
                const double t = span > 0.0 ? std::clamp((v - p2) / span, 0.0, 1.0) : 0.5;
                rgb[(static_cast<std::size_t>(i) * cube.cols + j) * 3 + c] =
                    static_cast<std::uint8_t>(std::lround(t * 255.0));
            }
        }
    }
    write_rgb8_png(path, cube.rows, cube.cols, rgb);
}

} // namespace pwrctv

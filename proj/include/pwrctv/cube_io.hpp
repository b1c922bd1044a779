#pragma once

#include <string>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Native cube format: a JSON header sidecar describing a flat little-endian
// binary payload, band-sequential with the in-memory element order (within a
// band, column-major). ENVI-style .hdr/.img pairs (bsq, little-endian, float32
// or uint16) are accepted read-only.
struct CubeFileHeader {
    int rows = 0;
    int cols = 0;
    int bands = 0;
    std::string dtype = "float32le"; // or "uint16le"
    std::string layout = "band-sequential";
    double scale = 0.0;       // uint16le only: stored / scale -> [0,1]
    std::string data_file;    // payload name, relative to the header
    std::string provenance;   // optional NoiseSpec JSON echo
};

// Writes header_path (JSON) plus a float32le payload. data_path defaults to the
// header path with its extension replaced by ".raw".
void write_cube(const HyperCube& cube, const std::string& header_path, const std::string& data_path = "",
                const std::string& provenance = "");

// Dispatches on the header extension: ".hdr" parses ENVI, anything else parses
// the native JSON sidecar. data_path overrides the payload location.
HyperCube read_cube(const std::string& header_path, const std::string& data_path = "");

CubeFileHeader read_cube_header(const std::string& header_path);

// Loads a guidance image from an 8/16-bit grayscale PNG or a single-band cube
// file, min-max normalizes to [0,1], and resamples onto the target grid when
// one is given. Multi-band cubes are rejected.
PanImage read_pan(const std::string& path, int target_rows = 0, int target_cols = 0);

// Writes an 8-bit RGB PNG of three selected bands with a 2%-98% percentile
// stretch applied per band.
void export_falsecolor(const HyperCube& cube, int band_r, int band_g, int band_b,
                       const std::string& path);

} // namespace pwrctv

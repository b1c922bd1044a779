#include "pwrctv/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pwrctv/errors.hpp"
#include "pwrctv/manifest.hpp"
#include "pwrctv/png_io.hpp"

namespace pwrctv {

void write_trace(const std::string& path, const std::vector<IterationRecord>& trace) {
    const bool quality = !trace.empty() && std::isfinite(trace.front().psnr);
    std::ostringstream out;
    out << "#  iter        residual       objective              mu  stage";
    if (quality) out << "        psnr         sam";
    out << "\n";
    char line[256];
    for (const IterationRecord& r : trace) {
        std::snprintf(line, sizeof line, "%7d  %14.6e  %14.6e  %14.6e  %5d", r.iter, r.residual,
                      r.objective, r.mu, r.stage2 ? 2 : 1);
        out << line;
        if (quality) {
            std::snprintf(line, sizeof line, "  %10.4f  %10.4f", r.psnr, r.sam);
            out << line;
        }
        out << "\n";
    }
    write_text_atomic(path, out.str());
}

TraceColumns parse_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open trace file: " + path);
    TraceColumns c;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        double it, res, obj, mu;
        int stage;
        if (!(row >> it >> res >> obj >> mu >> stage)) {
            throw InputError("malformed trace row: " + line);
        }
        c.iter.push_back(it);
        c.residual.push_back(res);
        c.objective.push_back(obj);
        c.mu.push_back(mu);
        c.stage.push_back(stage);
        double p, s;
        if (row >> p >> s) {
            c.psnr.push_back(p);
            c.sam.push_back(s);
        }
    }
    c.has_quality = !c.psnr.empty() && c.psnr.size() == c.iter.size();
    return c;
}

std::pair<double, double> pad_range(double lo, double hi) {
    if (hi < lo) std::swap(lo, hi);
    double span = hi - lo;
    if (span <= 0.0) span = std::max(std::abs(hi), 1.0);
    return {lo - 0.05 * span, hi + 0.05 * span};
}

namespace {

// 5x7 glyphs, one byte per row, bit 4 = leftmost column.
struct Glyph {
    char ch;
    unsigned char rows[7];
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
    {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
    {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}},
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
};

const Glyph* find_glyph(char ch) {
    for (const Glyph& g : kFont) {
        if (g.ch == ch) return &g;
    }
    return nullptr;
}

struct Rgb {
    std::uint8_t r, g, b;
};

struct Canvas {
    int width, height;
    std::vector<std::uint8_t> pix; // row-major rgb

    Canvas(int w, int h) : width(w), height(h), pix(static_cast<std::size_t>(w) * h * 3, 255) {}

    void set(int x, int y, Rgb c) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        const std::size_t k = (static_cast<std::size_t>(y) * width + x) * 3;
        pix[k] = c.r;
        pix[k + 1] = c.g;
        pix[k + 2] = c.b;
    }

    void line(int x0, int y0, int x1, int y1, Rgb c) {
        const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
        const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        while (true) {
            set(x0, y0, c);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    void marker(int x, int y, Rgb c) {
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) set(x + dx, y + dy, c);
    }

    void text(int x, int y, const std::string& s, Rgb c, int scale = 1) {
        int cx = x;
        for (char raw : s) {
            const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
            if (ch != ' ') {
                if (const Glyph* g = find_glyph(ch)) {
                    for (int r = 0; r < 7; ++r) {
                        for (int col = 0; col < 5; ++col) {
                            if (g->rows[r] & (1 << (4 - col))) {
                                for (int sy = 0; sy < scale; ++sy)
                                    for (int sx = 0; sx < scale; ++sx)
                                        set(cx + col * scale + sx, y + r * scale + sy, c);
                            }
                        }
                    }
                }
            }
            cx += 6 * scale;
        }
    }
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGray{200, 200, 200};
constexpr Rgb kBlue{31, 80, 180};
constexpr Rgb kRed{200, 60, 90};

} // namespace

void render_trace_plot(const TraceColumns& c, const std::string& png_path) {
    if (c.iter.empty()) throw InputError("render_trace_plot: empty trace");

    const int W = 860, H = 520;
    const int x0 = 90, x1 = W - 90, y0 = 46, y1 = H - 64;
    Canvas cv(W, H);

    const auto [it_lo, it_hi] = pad_range(c.iter.front(), c.iter.back());
    auto map_x = [&](double v) {
        return x0 + static_cast<int>(std::lround((v - it_lo) / (it_hi - it_lo) * (x1 - x0)));
    };

    auto draw_series = [&](const std::vector<double>& vals, double lo, double hi, Rgb color) {
        auto map_y = [&](double v) {
            return y1 - static_cast<int>(std::lround((v - lo) / (hi - lo) * (y1 - y0)));
        };
        int px = 0, py = 0;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const int x = map_x(c.iter[k]);
            const int y = map_y(vals[k]);
            if (k > 0) cv.line(px, py, x, y, color);
            cv.marker(x, y, color);
            px = x;
            py = y;
        }
    };

    auto axis_ticks = [&](double lo, double hi, bool left, Rgb color, bool log_labels) {
        for (int t = 0; t <= 4; ++t) {
            const double v = lo + (hi - lo) * t / 4.0;
            const int y = y1 - static_cast<int>(std::lround((v - lo) / (hi - lo) * (y1 - y0)));
            cv.line(x0, y, x1, y, kGray);
            const std::string label = log_labels ? "1E" + tick_label(v) : tick_label(v);
            if (left) cv.text(x0 - 6 * static_cast<int>(label.size()) - 8, y - 3, label, color);
            else cv.text(x1 + 8, y - 3, label, color);
        }
    };

    // x ticks
    for (int t = 0; t <= 4; ++t) {
        const double v = it_lo + (it_hi - it_lo) * t / 4.0;
        const int x = map_x(v);
        cv.line(x, y1, x, y1 + 4, kBlack);
        const std::string label = tick_label(std::round(v));
        cv.text(x - 3 * static_cast<int>(label.size()), y1 + 10, label, kBlack);
    }
    cv.text((x0 + x1) / 2 - 36, H - 26, "ITERATION", kBlack, 2);

    if (c.has_quality) {
        const auto [plo, phi] = pad_range(*std::min_element(c.psnr.begin(), c.psnr.end()),
                                          *std::max_element(c.psnr.begin(), c.psnr.end()));
        const auto [slo, shi] = pad_range(*std::min_element(c.sam.begin(), c.sam.end()),
                                          *std::max_element(c.sam.begin(), c.sam.end()));
        axis_ticks(plo, phi, true, kBlue, false);
        axis_ticks(slo, shi, false, kRed, false);
        draw_series(c.psnr, plo, phi, kBlue);
        draw_series(c.sam, slo, shi, kRed);
        cv.text(x0, 18, "PSNR", kBlue, 2);
        cv.text(x1 - 4 * 12, 18, "SAM", kRed, 2);
    } else {
        std::vector<double> logres(c.residual.size());
        for (std::size_t k = 0; k < logres.size(); ++k) {
            logres[k] = std::log10(std::max(c.residual[k], 1e-300));
        }
        const auto [rlo, rhi] = pad_range(*std::min_element(logres.begin(), logres.end()),
                                          *std::max_element(logres.begin(), logres.end()));
        axis_ticks(rlo, rhi, true, kBlue, true);
        draw_series(logres, rlo, rhi, kBlue);
        cv.text(x0, 18, "RESIDUAL", kBlue, 2);
    }

    cv.line(x0, y0, x0, y1, kBlack);
    cv.line(x0, y1, x1, y1, kBlack);
    cv.line(x1, y0, x1, y1, kBlack);

    write_rgb8_png(png_path, H, W, cv.pix);
}

} // namespace pwrctv

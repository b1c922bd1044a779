#pragma once

#include <string>
#include <vector>

#include "pwrctv/solver.hpp"

namespace pwrctv {

// Fixed-column iteration trace. With ground truth the columns are
// iter residual objective mu stage psnr sam; without, the last two are absent.
void write_trace(const std::string& path, const std::vector<IterationRecord>& trace);

struct TraceColumns {
    std::vector<double> iter;
    std::vector<double> residual;
    std::vector<double> objective;
    std::vector<double> mu;
    std::vector<int> stage;
    std::vector<double> psnr;
    std::vector<double> sam;
    bool has_quality = false;
};

TraceColumns parse_trace(const std::string& path);

// Dual-axis convergence figure: PSNR (left) and SAM (right) against iteration.
// Traces without quality columns fall back to the residual on a log10 axis.
void render_trace_plot(const TraceColumns& columns, const std::string& png_path);

// Tick bounds used by the renderer: a padded range guaranteed to contain
// [lo, hi], widened when the interval is empty.
std::pair<double, double> pad_range(double lo, double hi);

} // namespace pwrctv

#pragma once

#include <Eigen/Dense>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Downsample a guidance image onto a target grid and min-max normalize to [0,1].
// Integer row/col ratios use block averaging; anything else uses bilinear
// interpolation with an endpoint-preserving (align-corners) coordinate map.
// The target may not exceed the source in either dimension.
PanImage pan_resample(const Eigen::Ref<const Eigen::ArrayXXd>& pan, int target_rows, int target_cols);

// Min-max normalization shared by the readers; constant input is flagged
// degenerate and mapped to all zeros.
PanImage normalize_pan(const Eigen::Ref<const Eigen::ArrayXXd>& field);

} // namespace pwrctv

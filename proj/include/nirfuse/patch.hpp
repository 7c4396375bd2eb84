// Dense patch extraction, spatial weights and local statistics used by
// the per-pixel mapping solve and its prior.

#ifndef NIRFUSE_PATCH_HPP
#define NIRFUSE_PATCH_HPP

#include <vector>

#include "nirfuse/image.hpp"

namespace nirfuse {

/// m x m window read with border replication, raster order.
struct PatchWindow {
    int center_x = 0;
    int center_y = 0;
    int size = 0;  // odd m
    std::vector<double> values;

    double center() const { return values[static_cast<std::size_t>(size) * size / 2]; }
};

/// Diagonal of W: positive weights, largest at the window center.
struct SpatialWeights {
    int size = 0;
    std::vector<double> diag;
};

PatchWindow extract_patch(const ImagePlane& plane, int x, int y, int m);

/// Gaussian-in-distance weights: exp(-(dx^2+dy^2)/(2 sigma_s^2)).
SpatialWeights spatial_weights(int m, double sigma_s);

/// Unweighted arithmetic mean and population variance of the window.
void local_stats(const PatchWindow& patch, double& mean, double& var);

}  // namespace nirfuse

#endif

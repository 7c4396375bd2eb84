#include "nirfuse/patch.hpp"

#include <cmath>

namespace nirfuse {

PatchWindow extract_patch(const ImagePlane& plane, int x, int y, int m) {
    if (m < 3 || m % 2 == 0) throw ParamError("extract_patch: m must be odd and >= 3");
    if (x < 0 || x >= plane.width || y < 0 || y >= plane.height)
        throw ParamError("extract_patch: center outside plane");
    PatchWindow w;
    w.center_x = x;
    w.center_y = y;
    w.size = m;
    w.values.resize(static_cast<std::size_t>(m) * m);
    const int r = m / 2;
    std::size_t k = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            w.values[k++] = plane.at_clamped(x + dx, y + dy);
    return w;
}

SpatialWeights spatial_weights(int m, double sigma_s) {
    if (m < 3 || m % 2 == 0) throw ParamError("spatial_weights: m must be odd and >= 3");
    if (!(sigma_s > 0.0)) throw ParamError("spatial_weights: sigma_s must be positive");
    SpatialWeights w;
    w.size = m;
    w.diag.resize(static_cast<std::size_t>(m) * m);
    const int r = m / 2;
    const double inv = 1.0 / (2.0 * sigma_s * sigma_s);
    std::size_t k = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            w.diag[k++] = std::exp(-(dx * dx + dy * dy) * inv);
    return w;
}

void local_stats(const PatchWindow& patch, double& mean, double& var) {
    const std::size_t n = patch.values.size();
    double s = 0.0;
    for (double v : patch.values) s += v;
    mean = s / static_cast<double>(n);
    double ss = 0.0;
    for (double v : patch.values) {
        const double d = v - mean;
        ss += d * d;
    }
    var = ss / static_cast<double>(n);
}

}  // namespace nirfuse

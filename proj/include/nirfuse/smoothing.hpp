// Edge-preserving nonlocal means smoothing, base/detail decomposition,
// and a robust noise-level estimate for the denoising preset.

#ifndef NIRFUSE_SMOOTHING_HPP
#define NIRFUSE_SMOOTHING_HPP

#include "nirfuse/image.hpp"

namespace nirfuse {

struct NlmParams {
    int patch_radius = 3;
    int search_radius = 10;
    double h = 10.0 / 255.0;  // filtering strength, intensity units

    void validate() const {
        if (patch_radius < 1 || search_radius < 1)
            throw ParamError("NlmParams: radii must be >= 1");
        if (!(h > 0.0)) throw ParamError("NlmParams: h must be positive");
    }
};

/// Additive base + detail split with base = smoothed plane.
struct LayerPair {
    ImagePlane base;
    ImagePlane detail;
};

// Weight for pixel j in the search window of i is
// exp(-||patch_i - patch_j||^2 / (h^2 * patch_area)); the self weight is
// the maximum of the other weights. If every weight underflows the pixel
// keeps its input value.
ImagePlane nlm_filter(const ImagePlane& plane, const NlmParams& params);

/// base = nlm_filter(plane), detail = plane - base (exact residual).
LayerPair base_layer(const ImagePlane& plane, const NlmParams& params);

/// Noise std estimate: MAD of the finest diagonal differences / 0.6745.
double noise_std_mad(const ImagePlane& plane);

}  // namespace nirfuse

#endif

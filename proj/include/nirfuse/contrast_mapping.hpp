// Contrast-preserving per-pixel linear mapping from the NIR plane to
// the visible luminance plane: for every pixel a 2-parameter weighted
// ridge fit

//   a_i = (Q^T W Q + mu_c I)^-1 (Q^T W p + mu_c a_i0),  Q = [nir_patch 1]
//
// with a local-contrast prior a_i0 built from center/mean brightness
// ratios of the two patches.

#ifndef NIRFUSE_CONTRAST_MAPPING_HPP
#define NIRFUSE_CONTRAST_MAPPING_HPP

#include <cstdint>
#include <vector>

#include "nirfuse/image.hpp"
#include "nirfuse/patch.hpp"

namespace nirfuse {

// Floor on the |mean| in the contrast ratios of the prior.
inline constexpr double kPriorMeanFloor = 1e-4;

/// Prior coefficients; the bias slot is identically zero.
struct ContrastPrior {
    double slope0 = 1.0;
    double bias0 = 0.0;
};

/// Per-pixel slope/bias fields plus fallback flags for degenerate solves.
struct MappingField {
    int width = 0;
    int height = 0;
    ImagePlane slope;
    ImagePlane bias;
    std::vector<std::uint8_t> fallback;  // 1 where the singular fallback fired

    MappingField() = default;
    MappingField(int w, int h)
        : width(w), height(h), slope(w, h), bias(w, h),
          fallback(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t fallback_count() const {
        std::size_t n = 0;
        for (auto f : fallback) n += f;
        return n;
    }
};

ContrastPrior contrast_prior(const PatchWindow& nir_patch, const PatchWindow& vis_patch);

/// Dense per-pixel solve. sigma_s <= 0 selects the default m/3.
MappingField solve_mapping(const ImagePlane& vis_l, const ImagePlane& nir,
                           int m, double mu_c, double sigma_s = 0.0);

/// x_i = nir_i * slope_i + bias_i.
ImagePlane apply_mapping(const ImagePlane& nir, const MappingField& field);

/// MSE between vis_l and the mu_c = 0 mapped NIR plane.
double validate_linearity(const ImagePlane& vis_l, const ImagePlane& nir, int m);

}  // namespace nirfuse

#endif

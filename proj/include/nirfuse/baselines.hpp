// Comparison methods: naive chrominance swap, gradient-regularized
// fusion (IRLS on a gamma-power gradient penalty), wavelet
// multiresolution fusion, and local statistical transfer.

#ifndef NIRFUSE_BASELINES_HPP
#define NIRFUSE_BASELINES_HPP

#include <vector>

#include "nirfuse/image.hpp"
#include "nirfuse/wavelet.hpp"

namespace nirfuse {

struct BaselineParams {
    double mu_g = 1000.0;
    double gamma = 0.8;
    double omega_l = 0.5;
    int stat_window = 7;

    void validate() const {
        if (!(mu_g > 0.0)) throw ParamError("BaselineParams: mu_g must be positive");
        if (!(gamma > 0.0) || gamma > 1.0) throw ParamError("BaselineParams: gamma must be in (0,1]");
        if (omega_l < 0.0 || omega_l > 1.0) throw ParamError("BaselineParams: omega_l must be in [0,1]");
        if (stat_window < 3 || stat_window % 2 == 0)
            throw ParamError("BaselineParams: stat_window must be odd and >= 3");
    }
};

/// Visible chrominance combined directly with the NIR gray plane.
RgbImage naive_colorize(const ImagePlane& nir, const RgbImage& vis);

struct FuseResult {
    ImagePlane plane;
    bool warning = false;
    std::vector<double> objective_trace;
};

// IRLS smoothing constant for the gamma-power penalty weights.
inline constexpr double kIrlsEps = 1e-4;

/// min_x mu_g ||x - vis_l||^2 + sum_j |grad_j x - grad_j nir|^gamma,
/// solved by IRLS (10 rounds) with preconditioned-CG quadratic solves.
FuseResult gradient_reg_fuse(const ImagePlane& vis_l, const ImagePlane& nir,
                             double mu_g, double gamma);

/// Smoothed objective the IRLS rounds are measured against.
double gradient_reg_objective(const ImagePlane& x, const ImagePlane& vis_l,
                              const ImagePlane& nir, double mu_g, double gamma);

/// Coarsest LL mixed with omega_l; all other subbands take the larger
/// magnitude coefficient with sign preserved. Dims not divisible by
/// 2^levels are replicate-padded and cropped on return.
ImagePlane wavelet_fuse(const ImagePlane& vis_l, const ImagePlane& nir,
                        double omega_l, int levels,
                        WaveletKind kind = WaveletKind::Haar);

/// Local mean/std remap of luminance and chrominance by the NIR/visible
/// std ratio (both stds floored at 1e-4).
RgbImage statistical_fuse(const RgbImage& vis, const ImagePlane& nir, int window);

}  // namespace nirfuse

#endif

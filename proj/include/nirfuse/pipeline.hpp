// End-to-end orchestration: forward conversion, contrast-preserving
// mapping, detail layer transfer, color transfer, backward conversion;
// the denoising variant runs an initial per-channel smoothing first.
//
// The mapping/detail machinery operates on the gray-equivalent
// luminance (luminance_to_gray of the opponent l plane), which is the
// [0,1] scale the NIR input lives on.

#ifndef NIRFUSE_PIPELINE_HPP
#define NIRFUSE_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nirfuse/baselines.hpp"
#include "nirfuse/color_transfer.hpp"
#include "nirfuse/contrast_mapping.hpp"
#include "nirfuse/detail_transfer.hpp"
#include "nirfuse/image.hpp"
#include "nirfuse/metrics.hpp"
#include "nirfuse/smoothing.hpp"

namespace nirfuse {

enum class Method { Proposed, Naive, GradReg, Wavelet, Statistical };

Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct PipelineConfig {
    int m = 7;
    double mu_c = 7500.0;
    double mu_d = 200.0;
    double sigma_s = 0.0;  // 0 selects m/3
    NlmParams nlm;
    ChromaParams chroma;
    BaselineParams baseline;
    int wavelet_levels = 2;
    WaveletKind wavelet_kind = WaveletKind::Haar;
    Method method = Method::Proposed;
    bool denoise_first = false;
    double denoise_h = 0.0;  // 0 selects the per-channel noise estimate
    std::string metrics_out;

    void validate() const;
    DetailSolveParams detail_params() const;
};

struct PipelineResult {
    RgbImage image;
    std::vector<std::string> warnings;
};

/// Fig.-2 coloring path (or the selected baseline).
PipelineResult colorize(const RgbImage& vis, const ImagePlane& nir,
                        const PipelineConfig& cfg);

/// Initial denoising of the visible image, then the coloring path.
PipelineResult denoise(const RgbImage& vis_noisy, const ImagePlane& nir,
                       const PipelineConfig& cfg);

/// CT/SF on the gray-equivalent luminance, EN/CF on the RGB image.
/// Appends one JSON record to cfg.metrics_out when set.
QualityReport run_metrics(const RgbImage& img, const PipelineConfig& cfg);

/// Table-I style check: MSE of the mu_c = 0 mapping on this pair.
double validate(const RgbImage& vis, const ImagePlane& nir, int m);

}  // namespace nirfuse

#endif

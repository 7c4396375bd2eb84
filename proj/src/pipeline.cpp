#include "nirfuse/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "nirfuse/color_space.hpp"

namespace nirfuse {

Method method_from_string(const std::string& name) {
    if (name == "proposed") return Method::Proposed;
    if (name == "naive") return Method::Naive;
    if (name == "gradreg") return Method::GradReg;
    if (name == "wavelet") return Method::Wavelet;
    if (name == "statistical") return Method::Statistical;
    throw ParamError("unknown method: " + name);
}

std::string method_to_string(Method m) {
    switch (m) {
        case Method::Proposed: return "proposed";
        case Method::Naive: return "naive";
        case Method::GradReg: return "gradreg";
        case Method::Wavelet: return "wavelet";
        case Method::Statistical: return "statistical";
    }
    return "proposed";
}

void PipelineConfig::validate() const {
    if (m < 3 || m % 2 == 0) throw ParamError("config: m must be odd and >= 3");
    if (mu_c < 0.0) throw ParamError("config: mu_c must be >= 0");
    if (!(mu_d > 0.0)) throw ParamError("config: mu_d must be positive");
    nlm.validate();
    chroma.validate();
    baseline.validate();
    if (wavelet_levels < 1) throw ParamError("config: wavelet_levels must be >= 1");
}

DetailSolveParams PipelineConfig::detail_params() const {
    DetailSolveParams p;
    p.mu_d = mu_d;
    return p;
}

namespace {

PipelineResult colorize_proposed(const RgbImage& vis, const ImagePlane& nir,
                                 const PipelineConfig& cfg) {
    PipelineResult res;
    OpponentImage opp = forward_opponent(vis);
    const ImagePlane vis_lum = luminance_to_gray(opp.l);

    const MappingField field = solve_mapping(vis_lum, nir, cfg.m, cfg.mu_c, cfg.sigma_s);
    if (field.fallback_count() > 0)
        res.warnings.push_back("solve_mapping: singular patches handled by prior fallback (" +
                               std::to_string(field.fallback_count()) + " pixels)");

    const ImagePlane mapped = apply_mapping(nir, field);
    TransferResult detail = transfer_detail(mapped, nir, cfg.nlm, cfg.detail_params());
    if (detail.warning)
        res.warnings.push_back("transfer_detail: objective increased; best iterate returned");

    auto [c1, c2] = transfer_colors(opp.c1, opp.c2, field, cfg.chroma);
    if (cfg.chroma.chroma_scale != 1.0) {
        auto boosted = chroma_map(c1, c2, cfg.chroma.chroma_scale);
        c1 = std::move(boosted.first);
        c2 = std::move(boosted.second);
    }

    res.image = backward_opponent(OpponentImage(gray_to_luminance(detail.plane),
                                                std::move(c1), std::move(c2)));
    return res;
}

PipelineResult colorize_with_vis_colors(const RgbImage& vis, const ImagePlane& fused,
                                        std::vector<std::string> warnings) {
    OpponentImage opp = forward_opponent(vis);
    PipelineResult res;
    res.warnings = std::move(warnings);
    res.image = backward_opponent(OpponentImage(gray_to_luminance(fused),
                                                std::move(opp.c1), std::move(opp.c2)));
    return res;
}

}  // namespace

PipelineResult colorize(const RgbImage& vis, const ImagePlane& nir,
                        const PipelineConfig& cfg) {
    cfg.validate();
    if (vis.width != nir.width || vis.height != nir.height)
        throw InputError("colorize: visible and NIR dimensions differ");

    switch (cfg.method) {
        case Method::Proposed:
            return colorize_proposed(vis, nir, cfg);
        case Method::Naive: {
            PipelineResult res;
            res.image = naive_colorize(nir, vis);
            return res;
        }
        case Method::GradReg: {
            const ImagePlane vl = luminance_to_gray(luminance_of(vis));
            FuseResult fr = gradient_reg_fuse(vl, nir, cfg.baseline.mu_g, cfg.baseline.gamma);
            std::vector<std::string> warnings;
            if (fr.warning) warnings.push_back("gradient_reg_fuse: objective increased; best iterate kept");
            return colorize_with_vis_colors(vis, fr.plane, std::move(warnings));
        }
        case Method::Wavelet: {
            const ImagePlane vl = luminance_to_gray(luminance_of(vis));
            const ImagePlane fused =
                wavelet_fuse(vl, nir, cfg.baseline.omega_l, cfg.wavelet_levels, cfg.wavelet_kind);
            return colorize_with_vis_colors(vis, fused, {});
        }
        case Method::Statistical: {
            PipelineResult res;
            res.image = statistical_fuse(vis, nir, cfg.baseline.stat_window);
            return res;
        }
    }
    throw ParamError("colorize: unhandled method");
}

PipelineResult denoise(const RgbImage& vis_noisy, const ImagePlane& nir,
                       const PipelineConfig& cfg) {
    cfg.validate();
    if (vis_noisy.width != nir.width || vis_noisy.height != nir.height)
        throw InputError("denoise: visible and NIR dimensions differ");

    RgbImage denoised(vis_noisy.width, vis_noisy.height);
    const ImagePlane* in[3] = {&vis_noisy.r, &vis_noisy.g, &vis_noisy.b};
    ImagePlane* out[3] = {&denoised.r, &denoised.g, &denoised.b};
    for (int c = 0; c < 3; ++c) {
        NlmParams p = cfg.nlm;
        p.h = cfg.denoise_h > 0.0 ? cfg.denoise_h
                                  : std::max(noise_std_mad(*in[c]), 1e-9);
        *out[c] = nlm_filter(*in[c], p);
    }
    return colorize(denoised, nir, cfg);
}

QualityReport run_metrics(const RgbImage& img, const PipelineConfig& cfg) {
    const ImagePlane lum = luminance_to_gray(luminance_of(img));
    QualityReport rep;
    rep.ct = contrast_measure(lum, 2.0);
    rep.en = entropy(img);
    rep.sf = spatial_frequency(lum);
    rep.cf = colorfulness(img);
    rep.method = method_to_string(cfg.method);
    rep.params = {{"m", static_cast<double>(cfg.m)},
                  {"mu_c", cfg.mu_c},
                  {"mu_d", cfg.mu_d},
                  {"slope_floor", cfg.chroma.slope_floor},
                  {"chroma_scale", cfg.chroma.chroma_scale},
                  {"nlm_h", cfg.nlm.h}};
    if (!cfg.metrics_out.empty()) {
        std::ofstream out(cfg.metrics_out, std::ios::app);
        if (!out) throw IoError("cannot write metrics report: " + cfg.metrics_out);
        out << rep.to_json() << "\n";
    }
    return rep;
}

double validate(const RgbImage& vis, const ImagePlane& nir, int m) {
    if (vis.width != nir.width || vis.height != nir.height)
        throw InputError("validate: visible and NIR dimensions differ");
    const ImagePlane vl = luminance_to_gray(luminance_of(vis));
    return validate_linearity(vl, nir, m);
}

}  // namespace nirfuse

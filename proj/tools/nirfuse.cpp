// nirfuse: NIR coloring / guided denoising / fusion baselines / quality
// metrics, as library operations behind one CLI.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "nirfuse/image_io.hpp"
#include "nirfuse/pipeline.hpp"

namespace {

struct CommonOpts {
    nirfuse::PipelineConfig cfg;
    std::string method = "proposed";
    std::string wavelet = "haar";
    std::string vis_path, nir_path, out_path;
    std::string config_path;  // consumed before flag parsing
    bool strict = false;
};

// Flat key=value config; keys are the long flag names without dashes.
// Applied before flag parsing, so flags win.
void apply_config_file(const std::string& path, CommonOpts& o) {
    std::ifstream in(path);
    if (!in) throw nirfuse::IoError("cannot read config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw nirfuse::ParamError("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto num = [&] { return std::stod(value); };
        if (key == "m") o.cfg.m = static_cast<int>(num());
        else if (key == "mu-c") o.cfg.mu_c = num();
        else if (key == "mu-d") o.cfg.mu_d = num();
        else if (key == "sigma-s") o.cfg.sigma_s = num();
        else if (key == "nlm-patch-radius") o.cfg.nlm.patch_radius = static_cast<int>(num());
        else if (key == "nlm-search-radius") o.cfg.nlm.search_radius = static_cast<int>(num());
        else if (key == "nlm-h") o.cfg.nlm.h = num();
        else if (key == "slope-floor") o.cfg.chroma.slope_floor = num();
        else if (key == "chroma-scale") o.cfg.chroma.chroma_scale = num();
        else if (key == "mu-g") o.cfg.baseline.mu_g = num();
        else if (key == "gamma") o.cfg.baseline.gamma = num();
        else if (key == "omega-l") o.cfg.baseline.omega_l = num();
        else if (key == "levels") o.cfg.wavelet_levels = static_cast<int>(num());
        else if (key == "stat-window") o.cfg.baseline.stat_window = static_cast<int>(num());
        else if (key == "denoise-h") o.cfg.denoise_h = num();
        else if (key == "wavelet") o.wavelet = value;
        else if (key == "method") o.method = value;
        else if (key == "metrics-out") o.cfg.metrics_out = value;
        else throw nirfuse::ParamError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

// locate "--config <path>" (or --config=<path>) ahead of CLI parsing
std::string scan_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void add_pipeline_flags(CLI::App* app, CommonOpts& o) {
    app->add_option("--m", o.cfg.m, "odd patch size for the mapping solve");
    app->add_option("--mu-c", o.cfg.mu_c, "mapping prior weight");
    app->add_option("--mu-d", o.cfg.mu_d, "detail transfer data weight");
    app->add_option("--sigma-s", o.cfg.sigma_s, "spatial weight sigma (0 = m/3)");
    app->add_option("--nlm-patch-radius", o.cfg.nlm.patch_radius, "NLM patch radius");
    app->add_option("--nlm-search-radius", o.cfg.nlm.search_radius, "NLM search radius");
    app->add_option("--nlm-h", o.cfg.nlm.h, "NLM filtering strength");
    app->add_option("--slope-floor", o.cfg.chroma.slope_floor, "chroma divisor guard");
    app->add_option("--chroma-scale", o.cfg.chroma.chroma_scale, "uniform chroma scale");
    app->add_option("--mu-g", o.cfg.baseline.mu_g, "gradient regularization data weight");
    app->add_option("--gamma", o.cfg.baseline.gamma, "gradient penalty exponent (0,1]");
    app->add_option("--omega-l", o.cfg.baseline.omega_l, "wavelet LL mixing weight");
    app->add_option("--levels", o.cfg.wavelet_levels, "wavelet decomposition levels");
    app->add_option("--wavelet", o.wavelet, "wavelet kind: haar|db4");
    app->add_option("--stat-window", o.cfg.baseline.stat_window, "statistical fusion window");
    app->add_option("--metrics-out", o.cfg.metrics_out, "append a JSON metrics record here");
    app->add_flag("--strict", o.strict, "exit 2 on numerical warnings");
    app->add_option("--config", o.config_path, "flat key=value config file (flags override)");
}

void finalize(CommonOpts& o) {
    o.cfg.method = nirfuse::method_from_string(o.method);
    if (o.wavelet == "haar")
        o.cfg.wavelet_kind = nirfuse::WaveletKind::Haar;
    else if (o.wavelet == "db4")
        o.cfg.wavelet_kind = nirfuse::WaveletKind::Db4;
    else
        throw nirfuse::ParamError("unknown wavelet: " + o.wavelet);
}

int report_warnings(const std::vector<std::string>& warnings, bool strict) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return (strict && !warnings.empty()) ? 2 : 0;
}

int run_pair_command(CommonOpts& o, bool denoise_first) {
    finalize(o);
    o.cfg.denoise_first = denoise_first;
    const nirfuse::RgbImage vis = nirfuse::load_rgb(o.vis_path);
    const nirfuse::ImagePlane nir = nirfuse::load_plane(o.nir_path);
    const nirfuse::PipelineResult res = denoise_first ? nirfuse::denoise(vis, nir, o.cfg)
                                                      : nirfuse::colorize(vis, nir, o.cfg);
    nirfuse::save_image(res.image, o.out_path);
    if (!o.cfg.metrics_out.empty()) nirfuse::run_metrics(res.image, o.cfg);
    return report_warnings(res.warnings, o.strict);
}

void print_table(const std::vector<nirfuse::QualityReport>& reports,
                 const std::vector<std::string>& names) {
    std::printf("%-28s %-12s %8s %8s %8s %8s\n", "image", "method", "CT", "EN", "SF", "CF");
    for (std::size_t i = 0; i < reports.size(); ++i)
        std::printf("%-28s %-12s %8.3f %8.3f %8.3f %8.3f\n", names[i].c_str(),
                    reports[i].method.c_str(), reports[i].ct, reports[i].en,
                    reports[i].sf, reports[i].cf);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-infrared coloring via contrast-preserving mapping"};
    app.require_subcommand(1);

    CommonOpts copt, dopt, fopt;
    std::string mmethod = "proposed", mout;
    std::vector<std::string> mimages;
    bool mtable = false;
    std::string vvis, vnir;
    int vm = 7;

    CLI::App* colorize = app.add_subcommand("colorize", "color a NIR image from an aligned visible image");
    colorize->add_option("--vis", copt.vis_path, "visible RGB image (PNG)")->required();
    colorize->add_option("--nir", copt.nir_path, "NIR gray image (PNG)")->required();
    colorize->add_option("-o,--out", copt.out_path, "output PNG")->required();
    colorize->add_option("--method", copt.method, "proposed|naive|gradreg|wavelet|statistical");
    add_pipeline_flags(colorize, copt);

    dopt.cfg.chroma.chroma_scale = 1.2;  // default chroma boost for the denoising path
    CLI::App* denoise = app.add_subcommand("denoise", "denoise a visible image guided by its NIR pair");
    denoise->add_option("--vis", dopt.vis_path, "noisy visible RGB image (PNG)")->required();
    denoise->add_option("--nir", dopt.nir_path, "NIR gray image (PNG)")->required();
    denoise->add_option("-o,--out", dopt.out_path, "output PNG")->required();
    denoise->add_option("--method", dopt.method, "coloring method after the initial denoising");
    denoise->add_option("--denoise-h", dopt.cfg.denoise_h, "initial NLM strength (0 = estimate)");
    add_pipeline_flags(denoise, dopt);

    CLI::App* fuse = app.add_subcommand("fuse", "run a baseline fusion method");
    fuse->add_option("--vis", fopt.vis_path, "visible RGB image (PNG)")->required();
    fuse->add_option("--nir", fopt.nir_path, "NIR gray image (PNG)")->required();
    fuse->add_option("-o,--out", fopt.out_path, "output PNG")->required();
    fuse->add_option("--method", fopt.method, "naive|gradreg|wavelet|statistical")->required();
    add_pipeline_flags(fuse, fopt);

    CLI::App* metrics = app.add_subcommand("metrics", "quality measures of colored images");
    metrics->add_option("images", mimages, "image files (PNG)")->required();
    metrics->add_option("--method", mmethod, "method label for the report");
    metrics->add_option("-o,--out", mout, "append JSON records to this file");
    metrics->add_flag("--table", mtable, "print a text table");

    CLI::App* validate = app.add_subcommand("validate", "MSE of the linear mapping (mu_c = 0)");
    validate->add_option("--vis", vvis, "visible RGB image (PNG)")->required();
    validate->add_option("--nir", vnir, "NIR gray image (PNG)")->required();
    validate->add_option("--m", vm, "odd patch size");

    try {
        const std::string cfg_path = scan_config_arg(argc, argv);
        if (!cfg_path.empty()) {
            apply_config_file(cfg_path, copt);
            apply_config_file(cfg_path, dopt);
            apply_config_file(cfg_path, fopt);
        }
        app.parse(argc, argv);

        if (*colorize) return run_pair_command(copt, false);
        if (*denoise) return run_pair_command(dopt, true);
        if (*fuse) {
            if (fopt.method == "proposed")
                throw nirfuse::ParamError("fuse runs baselines; use the colorize subcommand");
            return run_pair_command(fopt, false);
        }
        if (*metrics) {
            nirfuse::PipelineConfig cfg;
            cfg.method = nirfuse::method_from_string(mmethod);
            cfg.metrics_out = mout;
            std::vector<nirfuse::QualityReport> reports;
            for (const auto& path : mimages) {
                const nirfuse::RgbImage img = nirfuse::load_rgb(path);
                reports.push_back(nirfuse::run_metrics(img, cfg));
            }
            if (mtable) {
                print_table(reports, mimages);
            } else {
                for (const auto& r : reports) std::cout << r.to_json() << "\n";
            }
            return 0;
        }
        if (*validate) {
            const nirfuse::RgbImage vis = nirfuse::load_rgb(vvis);
            const nirfuse::ImagePlane nir = nirfuse::load_plane(vnir);
            std::printf("mse %.6e\n", nirfuse::validate(vis, nir, vm));
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const nirfuse::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "nirfuse/color_space.hpp"
#include "nirfuse/metrics.hpp"
#include "nirfuse/pipeline.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace nirfuse;

namespace {

PipelineConfig fast_config() {
    PipelineConfig cfg;
    cfg.nlm.patch_radius = 2;
    cfg.nlm.search_radius = 4;
    return cfg;
}

std::vector<double> highpass_region(const ImagePlane& p, int x0, int x1, int y0, int y1) {
    const ImagePlane hp = plane_sub(p, gaussian_blur(p, 2.0));
    std::vector<double> out;
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) out.push_back(hp.at(x, y));
    return out;
}

}  // namespace

TEST_CASE("self-pair colorizes to the gray rendering of the NIR plane") {
    const testsynth::SelfPair sp = testsynth::make_self_pair(48);
    const PipelineResult res = colorize(sp.vis, sp.nir, fast_config());
    CHECK(testutil::max_abs_diff(res.image, gray_to_rgb(sp.nir)) < 0.02);
}

TEST_CASE("method dispatch: naive flag equals naive_colorize exactly") {
    std::mt19937 rng(901);
    const RgbImage vis = testutil::random_rgb(16, 16, rng, 0.05, 0.95);
    const ImagePlane nir = testutil::random_plane(16, 16, rng, 0.05, 0.95);
    PipelineConfig cfg = fast_config();
    cfg.method = Method::Naive;
    const PipelineResult res = colorize(vis, nir, cfg);
    CHECK(testutil::max_abs_diff(res.image, naive_colorize(nir, vis)) == 0.0);
}

TEST_CASE("every method produces an output of input dimensions") {
    std::mt19937 rng(902);
    const RgbImage vis = testutil::random_rgb(20, 16, rng, 0.05, 0.95);
    const ImagePlane nir = testutil::random_plane(20, 16, rng, 0.05, 0.95);
    for (Method m : {Method::Proposed, Method::Naive, Method::GradReg, Method::Wavelet,
                     Method::Statistical}) {
        PipelineConfig cfg = fast_config();
        cfg.method = m;
        const PipelineResult res = colorize(vis, nir, cfg);
        CHECK(res.image.width == 20);
        CHECK(res.image.height == 16);
        CHECK(plane_finite(res.image.r));
        CHECK(plane_finite(res.image.g));
        CHECK(plane_finite(res.image.b));
    }
}

TEST_CASE("discrepancy pair: texture recovered, colors preserved") {
    const testsynth::DiscrepancyPair dp = testsynth::make_discrepancy_pair();
    const PipelineResult res = colorize(dp.vis, dp.nir, fast_config());

    // texture correlation with the NIR inside the saturated region
    const ImagePlane out_lum = luminance_to_gray(luminance_of(res.image));
    const int x1 = dp.split_x - 8;
    const auto hp_out = highpass_region(out_lum, 8, x1, 8, 56);
    const auto hp_nir = highpass_region(dp.nir, 8, x1, 8, 56);
    CHECK(testutil::correlation(hp_out, hp_nir) > 0.9);

    // chroma within 30% of the visible chroma in the unsaturated interior
    const OpponentImage ov = forward_opponent(dp.vis);
    const OpponentImage oo = forward_opponent(res.image);
    double dev = 0.0, mass = 0.0;
    for (int y = 8; y < 56; ++y)
        for (int x = dp.split_x + 8; x < dp.vis.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * dp.vis.width + x;
            const double cv = std::hypot(ov.c1.data[i], ov.c2.data[i]);
            if (cv < 1e-3) continue;
            const double co = std::hypot(oo.c1.data[i], oo.c2.data[i]);
            dev += std::fabs(co - cv);
            mass += cv;
        }
    CHECK(dev / mass < 0.3);
}

TEST_CASE("colorize is deterministic") {
    const testsynth::DiscrepancyPair dp = testsynth::make_discrepancy_pair(7, 32);
    const PipelineResult a = colorize(dp.vis, dp.nir, fast_config());
    const PipelineResult b = colorize(dp.vis, dp.nir, fast_config());
    CHECK(testutil::max_abs_diff(a.image, b.image) == 0.0);
}

TEST_CASE("colorize output stays finite on degenerate inputs") {
    std::mt19937 rng(903);
    const int n = 16;
    const ImagePlane nir = testutil::random_plane(n, n, rng);
    for (double v : {0.0, 1.0}) {
        const RgbImage vis(n, n, v);
        const PipelineResult res = colorize(vis, nir, fast_config());
        CHECK(plane_finite(res.image.r));
        CHECK(plane_finite(res.image.g));
        CHECK(plane_finite(res.image.b));
    }
    // anti-correlated planes force negative slopes through the guard
    ImagePlane anti(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) anti.at(x, y) = 1.0 - nir.at(x, y);
    PipelineConfig cfg = fast_config();
    cfg.mu_c = 0.0;
    const PipelineResult res = colorize(gray_to_rgb(anti), nir, cfg);
    CHECK(plane_finite(res.image.r));
}

TEST_CASE("odd, non-square dimensions run through every method") {
    std::mt19937 rng(906);
    const RgbImage vis = testutil::random_rgb(47, 31, rng, 0.05, 0.95);
    const ImagePlane nir = testutil::random_plane(47, 31, rng, 0.05, 0.95);
    for (Method m : {Method::Proposed, Method::GradReg, Method::Wavelet, Method::Statistical}) {
        PipelineConfig cfg = fast_config();
        cfg.method = m;
        const PipelineResult res = colorize(vis, nir, cfg);
        CHECK(res.image.width == 47);
        CHECK(res.image.height == 31);
        CHECK(plane_finite(res.image.g));
    }
}

TEST_CASE("dimension mismatch is an input error") {
    const RgbImage vis(8, 8, 0.5);
    const ImagePlane nir(9, 8, 0.5);
    CHECK_THROWS_AS(colorize(vis, nir, fast_config()), InputError);
    CHECK_THROWS_AS(denoise(vis, nir, fast_config()), InputError);
    CHECK_THROWS_AS(validate(vis, nir, 7), InputError);
}

TEST_CASE("denoise with a vanishing filter strength reduces to colorize") {
    const testsynth::SelfPair sp = testsynth::make_self_pair(32);
    PipelineConfig cfg = fast_config();
    cfg.denoise_h = 1e-12;
    const PipelineResult den = denoise(sp.vis, sp.nir, cfg);
    const PipelineResult col = colorize(sp.vis, sp.nir, cfg);
    CHECK(testutil::max_abs_diff(den.image, col.image) < 1e-4);
}

TEST_CASE("validate: affine pair and the pipeline wrapper") {
    std::mt19937 rng(904);
    const ImagePlane nir = testutil::random_plane(24, 24, rng, 0.1, 0.5);
    ImagePlane g = nir;
    for (double& v : g.data) v = 1.5 * v + 0.1;
    const RgbImage vis = gray_to_rgb(g);
    CHECK(validate(vis, nir, 7) < 1e-12);
}

TEST_CASE("run_metrics: identities, determinism, file output") {
    const RgbImage gray(16, 16, 0.5);
    PipelineConfig cfg = fast_config();
    const QualityReport rep = run_metrics(gray, cfg);
    CHECK(rep.ct == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.en == 0.0);
    CHECK(rep.sf == 0.0);
    CHECK(rep.cf == doctest::Approx(0.0).epsilon(1e-9));

    std::mt19937 rng(905);
    const RgbImage img = testutil::random_rgb(12, 12, rng);
    const QualityReport a = run_metrics(img, cfg);
    const QualityReport b = run_metrics(img, cfg);
    CHECK(a.ct == b.ct);
    CHECK(a.en == b.en);
    CHECK(a.sf == b.sf);
    CHECK(a.cf == b.cf);

    const auto path = std::filesystem::temp_directory_path() / "nirfuse_metrics_test.jsonl";
    std::remove(path.string().c_str());
    cfg.metrics_out = path.string();
    run_metrics(img, cfg);
    run_metrics(img, cfg);
    std::ifstream in(path.string());
    int lines = 0;
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) {
            ++lines;
            last = line;
        }
    CHECK(lines == 2);
    CHECK(last.find("\"cf\":") != std::string::npos);
    std::remove(path.string().c_str());
}

TEST_CASE("proposed beats naive on the discrepancy pair metrics") {
    const testsynth::DiscrepancyPair dp = testsynth::make_discrepancy_pair();
    PipelineConfig cfg = fast_config();
    const QualityReport prop = run_metrics(colorize(dp.vis, dp.nir, cfg).image, cfg);
    cfg.method = Method::Naive;
    const QualityReport naive = run_metrics(colorize(dp.vis, dp.nir, cfg).image, cfg);
    CHECK(prop.ct >= naive.ct);
    CHECK(prop.en >= naive.en);
    CHECK(prop.sf >= naive.sf);
    CHECK(prop.cf >= naive.cf);
}

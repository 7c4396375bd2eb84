#include "nirfuse/metrics.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nirfuse/color_space.hpp"
#include "nirfuse/image_io.hpp"

namespace nirfuse {

std::string QualityReport::to_json() const {
    nlohmann::json j;
    j["method"] = method;
    j["params"] = params;
    j["ct"] = ct;
    j["en"] = en;
    j["sf"] = sf;
    j["cf"] = cf;
    return j.dump();
}

double colorfulness(const RgbImage& img) {
    const OpponentImage opp = forward_opponent(img);
    const std::size_t n = opp.c1.data.size();
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m1 += opp.c1.data[i];
        m2 += opp.c2.data[i];
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    double v1 = 0.0, v2 = 0.0, chroma_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = opp.c1.data[i], b = opp.c2.data[i];
        v1 += (a - m1) * (a - m1);
        v2 += (b - m2) * (b - m2);
        chroma_sum += std::sqrt(a * a + b * b);
    }
    v1 /= static_cast<double>(n);
    v2 /= static_cast<double>(n);
    const double sigma_ab = std::sqrt(v1 + v2) * 255.0;
    const double u_c = chroma_sum / static_cast<double>(n) * 255.0;
    return sigma_ab + 0.94 * u_c;
}

double spatial_frequency(const ImagePlane& plane) {
    const int w = plane.width, h = plane.height;
    double rf2 = 0.0, cf2 = 0.0;
    long rn = 0, cn = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 1; x < w; ++x) {
            const double d = plane.at(x, y) - plane.at(x - 1, y);
            rf2 += d * d;
            ++rn;
        }
    for (int y = 1; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double d = plane.at(x, y) - plane.at(x, y - 1);
            cf2 += d * d;
            ++cn;
        }
    const double rf = rn > 0 ? std::sqrt(rf2 / rn) : 0.0;
    const double cf = cn > 0 ? std::sqrt(cf2 / cn) : 0.0;
    return std::sqrt(rf * rf + cf * cf) * 255.0;
}

namespace {

double histogram_entropy(const ImagePlane& plane) {
    std::array<long, 256> hist{};
    for (double v : plane.data) ++hist[quantize_unit(v, 255u)];
    const double n = static_cast<double>(plane.data.size());
    double en = 0.0;
    for (long c : hist) {
        if (c == 0) continue;
        const double p = c / n;
        en -= p * std::log2(p);
    }
    return en;
}

}  // namespace

double entropy(const ImagePlane& plane) { return histogram_entropy(plane); }

double entropy(const RgbImage& img) {
    return histogram_entropy(img.r) + histogram_entropy(img.g) + histogram_entropy(img.b);
}

ImagePlane gaussian_blur(const ImagePlane& plane, double sigma) {
    if (!(sigma > 0.0)) throw ParamError("gaussian_blur: sigma must be positive");
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    const int w = plane.width, h = plane.height;
    ImagePlane tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * plane.at_clamped(x + i, y);
            tmp.at(x, y) = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.at_clamped(x, y + i);
            out.at(x, y) = acc;
        }
    return out;
}

double contrast_measure(const ImagePlane& plane, double sigma_k) {
    const ImagePlane blur = gaussian_blur(plane, sigma_k);
    double acc = 0.0;
    for (std::size_t i = 0; i < plane.data.size(); ++i)
        acc += std::fabs(plane.data[i] - blur.data[i]);
    return acc / static_cast<double>(plane.data.size()) * 255.0;
}

}  // namespace nirfuse

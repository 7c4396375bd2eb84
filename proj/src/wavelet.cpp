#include "nirfuse/wavelet.hpp"

#include <array>
#include <vector>

namespace nirfuse {

namespace {

const std::vector<double>& scaling_filter(WaveletKind kind) {
    static const std::vector<double> haar = {0.7071067811865476, 0.7071067811865476};
    static const std::vector<double> db4 = {
        0.23037781330885523, 0.71484657055254153, 0.63088076792959036,
        -0.02798376941698385, -0.18703481171888114, 0.03084138183598697,
        0.03288301166698295, -0.01059740178499728};
    return kind == WaveletKind::Haar ? haar : db4;
}

std::vector<double> wavelet_filter(const std::vector<double>& h) {
    std::vector<double> g(h.size());
    for (std::size_t j = 0; j < h.size(); ++j)
        g[j] = (j % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - j];
    return g;
}

// one periodic analysis step: first half approx, second half detail
void analyze_1d(std::vector<double>& x, int n, const std::vector<double>& h,
                const std::vector<double>& g, std::vector<double>& tmp) {
    const int half = n / 2;
    const int taps = static_cast<int>(h.size());
    for (int k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int j = 0; j < taps; ++j) {
            const double v = x[(2 * k + j) % n];
            a += h[j] * v;
            d += g[j] * v;
        }
        tmp[k] = a;
        tmp[half + k] = d;
    }
    for (int i = 0; i < n; ++i) x[i] = tmp[i];
}

void synthesize_1d(std::vector<double>& x, int n, const std::vector<double>& h,
                   const std::vector<double>& g, std::vector<double>& tmp) {
    const int half = n / 2;
    const int taps = static_cast<int>(h.size());
    for (int i = 0; i < n; ++i) tmp[i] = 0.0;
    for (int k = 0; k < half; ++k) {
        const double a = x[k], d = x[half + k];
        for (int j = 0; j < taps; ++j)
            tmp[(2 * k + j) % n] += h[j] * a + g[j] * d;
    }
    for (int i = 0; i < n; ++i) x[i] = tmp[i];
}

void check_dims(const ImagePlane& p, int levels) {
    if (levels < 1) throw ParamError("wavelet: levels must be >= 1");
    const int div = 1 << levels;
    if (p.width % div != 0 || p.height % div != 0)
        throw ParamError("wavelet: dimensions must be divisible by 2^levels");
    if ((p.width >> levels) < 1 || (p.height >> levels) < 1)
        throw ParamError("wavelet: too many levels for image size");
}

}  // namespace

ImagePlane dwt2(const ImagePlane& plane, int levels, WaveletKind kind) {
    check_dims(plane, levels);
    const auto& h = scaling_filter(kind);
    const auto g = wavelet_filter(h);
    ImagePlane out = plane;
    std::vector<double> line(std::max(plane.width, plane.height));
    std::vector<double> tmp(line.size());

    int bw = plane.width, bh = plane.height;
    for (int lev = 0; lev < levels; ++lev) {
        for (int y = 0; y < bh; ++y) {
            for (int x = 0; x < bw; ++x) line[x] = out.at(x, y);
            analyze_1d(line, bw, h, g, tmp);
            for (int x = 0; x < bw; ++x) out.at(x, y) = line[x];
        }
        for (int x = 0; x < bw; ++x) {
            for (int y = 0; y < bh; ++y) line[y] = out.at(x, y);
            analyze_1d(line, bh, h, g, tmp);
            for (int y = 0; y < bh; ++y) out.at(x, y) = line[y];
        }
        bw /= 2;
        bh /= 2;
    }
    return out;
}

ImagePlane idwt2(const ImagePlane& coeffs, int levels, WaveletKind kind) {
    check_dims(coeffs, levels);
    const auto& h = scaling_filter(kind);
    const auto g = wavelet_filter(h);
    ImagePlane out = coeffs;
    std::vector<double> line(std::max(coeffs.width, coeffs.height));
    std::vector<double> tmp(line.size());

    for (int lev = levels - 1; lev >= 0; --lev) {
        const int bw = coeffs.width >> lev;
        const int bh = coeffs.height >> lev;
        for (int x = 0; x < bw; ++x) {
            for (int y = 0; y < bh; ++y) line[y] = out.at(x, y);
            synthesize_1d(line, bh, h, g, tmp);
            for (int y = 0; y < bh; ++y) out.at(x, y) = line[y];
        }
        for (int y = 0; y < bh; ++y) {
            for (int x = 0; x < bw; ++x) line[x] = out.at(x, y);
            synthesize_1d(line, bw, h, g, tmp);
            for (int x = 0; x < bw; ++x) out.at(x, y) = line[x];
        }
    }
    return out;
}

}  // namespace nirfuse

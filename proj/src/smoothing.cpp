#include "nirfuse/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "nirfuse/parallel.hpp"

namespace nirfuse {

namespace {

// plane padded by rad with replicated borders
std::vector<double> pad_replicate(const ImagePlane& p, int rad, int& pw, int& ph) {
    pw = p.width + 2 * rad;
    ph = p.height + 2 * rad;
    std::vector<double> out(static_cast<std::size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y)
        for (int x = 0; x < pw; ++x)
            out[static_cast<std::size_t>(y) * pw + x] = p.at_clamped(x - rad, y - rad);
    return out;
}

}  // namespace

ImagePlane nlm_filter(const ImagePlane& plane, const NlmParams& params) {
    params.validate();
    const int w = plane.width, h = plane.height;
    if (w == 0 || h == 0) return plane;

    const int f = params.patch_radius;
    const int s = params.search_radius;
    const int rad = f + s;
    const double area = static_cast<double>(2 * f + 1) * (2 * f + 1);
    const double inv_h2 = 1.0 / (params.h * params.h * area);

    int pw, ph;
    const std::vector<double> pad = pad_replicate(plane, rad, pw, ph);
    auto padv = [&](int x, int y) { return pad[static_cast<std::size_t>(y) * pw + x]; };

    std::vector<double> acc(plane.size(), 0.0);
    std::vector<double> tot(plane.size(), 0.0);
    std::vector<double> wmax(plane.size(), 0.0);

    // One offset at a time: squared differences, then a separable box sum
    // gives every pixel's patch distance for that offset in O(N).
    const int ew = w + 2 * f, eh = h + 2 * f;  // diffs needed around each output pixel
    std::vector<double> diff2(static_cast<std::size_t>(ew) * eh);
    std::vector<double> rowsum(static_cast<std::size_t>(w) * eh);

    for (int dy = -s; dy <= s; ++dy) {
        for (int dx = -s; dx <= s; ++dx) {
            if (dx == 0 && dy == 0) continue;

            // squared differences over padded coords [s-f, ...) and the
            // horizontal window of width 2f+1, row by row
            parallel_rows(eh, [&](int y) {
                const int py = y + s;  // = (y - f) + rad
                double* d2 = &diff2[static_cast<std::size_t>(y) * ew];
                for (int x = 0; x < ew; ++x) {
                    const int px = x + s;
                    const double d = padv(px, py) - padv(px + dx, py + dy);
                    d2[x] = d * d;
                }
                double* dst = &rowsum[static_cast<std::size_t>(y) * w];
                double run = 0.0;
                for (int x = 0; x < 2 * f + 1; ++x) run += d2[x];
                dst[0] = run;
                for (int x = 1; x < w; ++x) {
                    run += d2[x + 2 * f] - d2[x - 1];
                    dst[x] = run;
                }
            });
            // vertical window, then fold this offset into the accumulators;
            // columns are disjoint so the result is thread-count independent
            parallel_rows(w, [&](int x) {
                double run = 0.0;
                for (int y = 0; y < 2 * f + 1; ++y) run += rowsum[static_cast<std::size_t>(y) * w + x];
                for (int y = 0; y < h; ++y) {
                    if (y > 0)
                        run += rowsum[static_cast<std::size_t>(y + 2 * f) * w + x] -
                               rowsum[static_cast<std::size_t>(y - 1) * w + x];
                    const double wgt = std::exp(-run * inv_h2);
                    const std::size_t i = static_cast<std::size_t>(y) * w + x;
                    acc[i] += wgt * padv(x + rad + dx, y + rad + dy);
                    tot[i] += wgt;
                    if (wgt > wmax[i]) wmax[i] = wgt;
                }
            });
        }
    }

    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double a = acc[i] + wmax[i] * plane.at(x, y);
            const double t = tot[i] + wmax[i];
            out.at(x, y) = t > 0.0 ? a / t : plane.at(x, y);
        }
    }
    return out;
}

LayerPair base_layer(const ImagePlane& plane, const NlmParams& params) {
    LayerPair lp;
    lp.base = nlm_filter(plane, params);
    lp.detail = plane_sub(plane, lp.base);
    return lp;
}

double noise_std_mad(const ImagePlane& plane) {
    const int bw = plane.width / 2, bh = plane.height / 2;
    if (bw < 1 || bh < 1) return 0.0;
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(bw) * bh);
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            const int x = 2 * bx, y = 2 * by;
            const double c = 0.5 * (plane.at(x, y) - plane.at(x + 1, y) -
                                    plane.at(x, y + 1) + plane.at(x + 1, y + 1));
            coeffs.push_back(std::fabs(c));
        }
    }
    const std::size_t mid = coeffs.size() / 2;
    std::nth_element(coeffs.begin(), coeffs.begin() + mid, coeffs.end());
    return coeffs[mid] / 0.6745;
}

}  // namespace nirfuse

#include "nirfuse/image.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nirfuse {

RgbImage::RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue)
    : width(red.width), height(red.height),
      r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    if (!r.same_dims(g) || !r.same_dims(b))
        throw InputError("RGB channels must share dimensions");
}

ImagePlane clamp_plane(const ImagePlane& p, double lo, double hi) {
    if (lo > hi) throw ParamError("clamp_plane: lo > hi");
    ImagePlane out = p;
    for (double& v : out.data) v = std::min(hi, std::max(lo, v));
    return out;
}

RgbImage clamp_image(const RgbImage& img, double lo, double hi) {
    return RgbImage(clamp_plane(img.r, lo, hi), clamp_plane(img.g, lo, hi),
                    clamp_plane(img.b, lo, hi));
}

RgbImage gray_to_rgb(const ImagePlane& p) { return RgbImage(p, p, p); }

double plane_min(const ImagePlane& p) {
    return *std::min_element(p.data.begin(), p.data.end());
}

double plane_max(const ImagePlane& p) {
    return *std::max_element(p.data.begin(), p.data.end());
}

double plane_mean(const ImagePlane& p) {
    double s = 0.0;
    for (double v : p.data) s += v;
    return p.data.empty() ? 0.0 : s / static_cast<double>(p.data.size());
}

bool plane_finite(const ImagePlane& p) {
    for (double v : p.data)
        if (!std::isfinite(v)) return false;
    return true;
}

ImagePlane plane_add(const ImagePlane& a, const ImagePlane& b) {
    if (!a.same_dims(b)) throw InputError("plane_add: dimension mismatch");
    ImagePlane out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

ImagePlane plane_sub(const ImagePlane& a, const ImagePlane& b) {
    if (!a.same_dims(b)) throw InputError("plane_sub: dimension mismatch");
    ImagePlane out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

}  // namespace nirfuse

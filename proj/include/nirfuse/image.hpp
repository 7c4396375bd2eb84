// Core image containers: single-channel planes and RGB triples.
// All pixel math runs in double; [0,1] is the nominal working range,
// quantization happens only at file boundaries.

#ifndef NIRFUSE_IMAGE_HPP
#define NIRFUSE_IMAGE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace nirfuse {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

/// Row-major single-channel image of real intensities.
struct ImagePlane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ImagePlane() = default;
    ImagePlane(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 0 || h < 0) throw ParamError("negative image dimensions");
    }

    std::size_t size() const { return data.size(); }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    // Replicate-padded read; any (x, y) is valid.
    double at_clamped(int x, int y) const {
        if (x < 0) x = 0;
        else if (x >= width) x = width - 1;
        if (y < 0) y = 0;
        else if (y >= height) y = height - 1;
        return at(x, y);
    }

    bool same_dims(const ImagePlane& o) const {
        return width == o.width && height == o.height;
    }
};

/// Three aligned channels, R/G/B order.
struct RgbImage {
    int width = 0;
    int height = 0;
    ImagePlane r, g, b;

    RgbImage() = default;
    RgbImage(int w, int h, double fill = 0.0)
        : width(w), height(h), r(w, h, fill), g(w, h, fill), b(w, h, fill) {}
    RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue);

    bool same_dims(const RgbImage& o) const {
        return width == o.width && height == o.height;
    }
};

ImagePlane clamp_plane(const ImagePlane& p, double lo, double hi);
RgbImage clamp_image(const RgbImage& img, double lo, double hi);

/// Replicate a gray plane into three identical channels.
RgbImage gray_to_rgb(const ImagePlane& p);

double plane_min(const ImagePlane& p);
double plane_max(const ImagePlane& p);
double plane_mean(const ImagePlane& p);
bool plane_finite(const ImagePlane& p);

ImagePlane plane_add(const ImagePlane& a, const ImagePlane& b);
ImagePlane plane_sub(const ImagePlane& a, const ImagePlane& b);

}  // namespace nirfuse

#endif

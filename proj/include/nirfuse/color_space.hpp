// Decorrelated opponent color space (log-LMS l-alpha-beta construction).
// Forward: RGB -> LMS cone response -> log10 -> orthogonal opponent
// transform. Backward is the exact algebraic inverse plus a final
// [0,1] clamp on RGB.

#ifndef NIRFUSE_COLOR_SPACE_HPP
#define NIRFUSE_COLOR_SPACE_HPP

#include "nirfuse/image.hpp"

namespace nirfuse {

// Floor applied to LMS before the log so zeros stay finite.
inline constexpr double kLmsFloor = 1e-6;

/// Luminance plus two chrominance planes in the decorrelated space.
struct OpponentImage {
    ImagePlane l, c1, c2;

    OpponentImage() = default;
    OpponentImage(ImagePlane lum, ImagePlane ca, ImagePlane cb);

    int width() const { return l.width; }
    int height() const { return l.height; }
};

OpponentImage forward_opponent(const RgbImage& img);
RgbImage backward_opponent(const OpponentImage& opp);

/// The l plane of forward_opponent, without materializing chrominance.
ImagePlane luminance_of(const RgbImage& img);

// Gray-equivalent luminance: the gray level g with l(g,g,g) = l.
// Equals the geometric mean of the LMS response; identity on grays.
// The pipeline runs its per-pixel machinery on this [0,1]-scaled plane.
ImagePlane luminance_to_gray(const ImagePlane& l);
ImagePlane gray_to_luminance(const ImagePlane& g);

double luminance_to_gray(double l);
double gray_to_luminance(double g);

}  // namespace nirfuse

#endif

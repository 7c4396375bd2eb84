// PNG file IO. 8- and 16-bit, grayscale and RGB. Values are scaled to
// [0,1] on load (divide by the bit-depth maximum) and quantized with
// round-half-up on save.

#ifndef NIRFUSE_IMAGE_IO_HPP
#define NIRFUSE_IMAGE_IO_HPP

#include <string>
#include <variant>

#include "nirfuse/image.hpp"

namespace nirfuse {

using LoadedImage = std::variant<ImagePlane, RgbImage>;

/// Load a PNG; grayscale files yield ImagePlane, color files RgbImage.
LoadedImage load_image(const std::string& path);

/// Load as a single plane; color input is rejected.
ImagePlane load_plane(const std::string& path);

/// Load as RGB; grayscale input is replicated across channels.
RgbImage load_rgb(const std::string& path);

void save_image(const ImagePlane& img, const std::string& path, int bit_depth = 8);
void save_image(const RgbImage& img, const std::string& path, int bit_depth = 8);

/// round(v * max) with half-up rounding, after clamping v to [0,1].
unsigned quantize_unit(double v, unsigned max_value);

}  // namespace nirfuse

#endif

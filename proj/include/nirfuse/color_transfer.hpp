// Chrominance derivation for the mapped luminance: divide the visible
// chrominance planes by the fitted slope (guarded away from zero), plus
// the optional uniform chroma scaling.

#ifndef NIRFUSE_COLOR_TRANSFER_HPP
#define NIRFUSE_COLOR_TRANSFER_HPP

#include <utility>

#include "nirfuse/contrast_mapping.hpp"
#include "nirfuse/image.hpp"

namespace nirfuse {

struct ChromaParams {
    double slope_floor = 0.2;  // divisor guard; caps amplification at 1/floor
    double chroma_scale = 1.0;

    void validate() const {
        if (!(slope_floor > 0.0)) throw ParamError("ChromaParams: slope_floor must be positive");
        if (!(chroma_scale > 0.0)) throw ParamError("ChromaParams: chroma_scale must be positive");
    }
};

/// Divide both chrominance planes by max(slope, slope_floor); non-positive
/// slopes use the floor.
std::pair<ImagePlane, ImagePlane> transfer_colors(const ImagePlane& vc1,
                                                  const ImagePlane& vc2,
                                                  const MappingField& field,
                                                  const ChromaParams& params);

/// Uniform chroma scaling: magnitude scales by s, hue angle unchanged.
std::pair<ImagePlane, ImagePlane> chroma_map(const ImagePlane& c1,
                                             const ImagePlane& c2, double s);

}  // namespace nirfuse

#endif

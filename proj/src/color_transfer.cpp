#include "nirfuse/color_transfer.hpp"

#include <algorithm>

namespace nirfuse {

std::pair<ImagePlane, ImagePlane> transfer_colors(const ImagePlane& vc1,
                                                  const ImagePlane& vc2,
                                                  const MappingField& field,
                                                  const ChromaParams& params) {
    params.validate();
    if (!vc1.same_dims(vc2) || vc1.width != field.width || vc1.height != field.height)
        throw InputError("transfer_colors: dimension mismatch");
    ImagePlane c1 = vc1, c2 = vc2;
    for (std::size_t i = 0; i < c1.data.size(); ++i) {
        const double divisor = std::max(field.slope.data[i], params.slope_floor);
        c1.data[i] /= divisor;
        c2.data[i] /= divisor;
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<ImagePlane, ImagePlane> chroma_map(const ImagePlane& c1,
                                             const ImagePlane& c2, double s) {
    if (!(s > 0.0)) throw ParamError("chroma_map: s must be positive");
    if (!c1.same_dims(c2)) throw InputError("chroma_map: dimension mismatch");
    ImagePlane o1 = c1, o2 = c2;
    for (double& v : o1.data) v *= s;
    for (double& v : o2.data) v *= s;
    return {std::move(o1), std::move(o2)};
}

}  // namespace nirfuse

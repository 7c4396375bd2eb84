// No-reference quality measures: colorfulness (CF), spatial frequency
// (SF), entropy (EN) and contrast (CT). All values are reported on a
// 0-255-equivalent scale.

#ifndef NIRFUSE_METRICS_HPP
#define NIRFUSE_METRICS_HPP

#include <map>
#include <string>

#include "nirfuse/image.hpp"

namespace nirfuse {

struct QualityReport {
    double ct = 0.0;
    double en = 0.0;
    double sf = 0.0;
    double cf = 0.0;
    std::string method;
    std::map<std::string, double> params;

    std::string to_json() const;
};

/// CF = sigma_ab + 0.94 u_C on the decorrelated chrominance planes.
double colorfulness(const RgbImage& img);

/// SF = sqrt(RF^2 + CF^2), RMS of first differences along rows/columns.
double spatial_frequency(const ImagePlane& plane);

/// Shannon entropy (bits) of the 256-bin histogram of 8-bit-quantized
/// values; RGB images sum the three per-channel entropies.
double entropy(const ImagePlane& plane);
double entropy(const RgbImage& img);

/// Mean |x - gaussian_blur(x)|, kernel sigma = sigma_k truncated at 3
/// sigma, replicate borders.
double contrast_measure(const ImagePlane& plane, double sigma_k = 2.0);

/// Separable Gaussian blur used by contrast_measure (replicate borders).
ImagePlane gaussian_blur(const ImagePlane& plane, double sigma);

}  // namespace nirfuse

#endif

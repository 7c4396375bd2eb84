// Thin FFTW wrapper for the periodic-boundary quadratic solves.
// Planner access is serialized; execution of distinct plans is safe.

#ifndef NIRFUSE_DFT_HPP
#define NIRFUSE_DFT_HPP

#include <complex>
#include <vector>

#include "nirfuse/image.hpp"

namespace nirfuse {

using ComplexGrid = std::vector<std::complex<double>>;

ComplexGrid dft2(const ImagePlane& p);
ImagePlane idft2_real(const ComplexGrid& g, int width, int height);  // scaled by 1/(w*h)

/// Spectral multiplier of the periodic forward difference along x or y:
/// gradient(p)(n) = p(n + e_axis) - p(n).
ComplexGrid derivative_multiplier(int width, int height, bool horizontal);

}  // namespace nirfuse

#endif

// Orthonormal 2-D discrete wavelet transform with periodic boundary.
// Haar by default; an 8-tap Daubechies filter bank is available as an
// alternative. Perfect reconstruction up to floating-point roundoff.

#ifndef NIRFUSE_WAVELET_HPP
#define NIRFUSE_WAVELET_HPP

#include "nirfuse/image.hpp"

namespace nirfuse {

enum class WaveletKind { Haar, Db4 };

// Multi-level 2-D analysis stored in-place Mallat style: after level k,
// the top-left (w/2^k) x (h/2^k) block holds the LL coefficients and the
// three sibling blocks hold LH/HL/HH.
ImagePlane dwt2(const ImagePlane& plane, int levels, WaveletKind kind = WaveletKind::Haar);
ImagePlane idwt2(const ImagePlane& coeffs, int levels, WaveletKind kind = WaveletKind::Haar);

}  // namespace nirfuse

#endif

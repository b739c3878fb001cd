// Copyright 2026 The FreqGuard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREQGUARD_TRANSFORMS_H_
#define FREQGUARD_TRANSFORMS_H_

#include <cstddef>

#include "freqguard/image.h"

namespace freqguard {

/// Orthonormal 2-D DCT-II. Throws kInvalidInput on non-finite samples.
Plane dct2(const Plane& plane);
/// Inverse of dct2 (orthonormal DCT-III).
Plane idct2(const Plane& coefficients);

/// Unnormalized forward 2-D DFT.
ComplexPlane fft2(const Plane& plane);
ComplexPlane fft2(const ComplexPlane& plane);
/// Inverse DFT scaled by 1/(HW), complex result.
ComplexPlane ifft2_complex(const ComplexPlane& spectrum);
/// Inverse DFT of a conjugate-symmetric spectrum. Imaginary residue above
/// kMaxImaginaryResidue throws kSpectralAsymmetry; smaller residue is dropped.
Plane ifft2(const ComplexPlane& spectrum);

inline constexpr double kMaxImaginaryResidue = 1e-6;

// BT.709 luma weights.
inline constexpr double kLumaR = 0.2126;
inline constexpr double kLumaG = 0.7152;
inline constexpr double kLumaB = 0.0722;

constexpr double luma(double r, double g, double b) {
  return kLumaR * r + kLumaG * g + kLumaB * b;
}

/// Y'UV with Y' = 0.2126R' + 0.7152G' + 0.0722B' and the BT.709 chroma rows
/// U = 0.5(B'-Y')/(1-0.0722), V = 0.5(R'-Y')/(1-0.2126).
Image rgb_to_yuv(const Image& image);
Image yuv_to_rgb(const Image& image);

Image clamp_unit(const Image& image);

/// Sampled isotropic Gaussian normalized to unit sum.
Kernel gaussian_kernel(double sigma, std::size_t size);
/// Smallest odd size >= 6 sigma, at least 3.
std::size_t gaussian_kernel_size(double sigma);

enum class Boundary { kCircular, kReflect };

/// 2-D convolution, kernel centered on each output sample. Circular mode wraps
/// around (and so equals the spectral product); reflect mode mirrors about the
/// edge sample without repeating it.
Plane convolve2d(const Plane& plane, const Kernel& kernel, Boundary boundary);
Image convolve_channels(const Image& image, const Kernel& kernel,
                        Boundary boundary);

}  // namespace freqguard

#endif  // FREQGUARD_TRANSFORMS_H_

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

#include "freqguard/transforms.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace freqguard {
namespace {

using Complex = std::complex<double>;

// basis[k * n + i] = alpha(k) cos(pi (2i + 1) k / 2n)
std::vector<double> dct_basis(std::size_t n) {
  std::vector<double> basis(n * n);
  const double a0 = std::sqrt(1.0 / static_cast<double>(n));
  const double ak = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = k == 0 ? a0 : ak;
    for (std::size_t i = 0; i < n; ++i) {
      basis[k * n + i] =
          alpha * std::cos(std::numbers::pi * static_cast<double>((2 * i + 1) * k) /
                           static_cast<double>(2 * n));
    }
  }
  return basis;
}

// Applies out = Bh * in * Bw^T when forward, Bh^T * in * Bw otherwise.
Plane separable_dct(const Plane& in, bool forward) {
  const std::size_t h = in.height();
  const std::size_t w = in.width();
  const auto bh = dct_basis(h);
  const auto bw = dct_basis(w);

  Plane tmp(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t k = 0; k < w; ++k) {
      double sum = 0.0;
      for (std::size_t c = 0; c < w; ++c) {
        sum += in(r, c) * (forward ? bw[k * w + c] : bw[c * w + k]);
      }
      tmp(r, k) = sum;
    }
  }
  Plane out(h, w);
  for (std::size_t k = 0; k < h; ++k) {
    for (std::size_t c = 0; c < w; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < h; ++r) {
        sum += tmp(r, c) * (forward ? bh[k * h + r] : bh[r * h + k]);
      }
      out(k, c) = sum;
    }
  }
  return out;
}

std::vector<Complex> twiddles(std::size_t n, bool inverse) {
  std::vector<Complex> table(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    table[k] = {std::cos(angle), std::sin(angle)};
  }
  return table;
}

// Naive separable DFT; O(HW(H+W)) is plenty at the sizes used here.
ComplexPlane separable_dft(const ComplexPlane& in, bool inverse) {
  const std::size_t h = in.height();
  const std::size_t w = in.width();
  const auto th = twiddles(h, inverse);
  const auto tw = twiddles(w, inverse);

  ComplexPlane tmp(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t v = 0; v < w; ++v) {
      Complex sum{};
      for (std::size_t c = 0; c < w; ++c) sum += in(r, c) * tw[(v * c) % w];
      tmp(r, v) = sum;
    }
  }
  ComplexPlane out(h, w);
  for (std::size_t u = 0; u < h; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      Complex sum{};
      for (std::size_t r = 0; r < h; ++r) sum += tmp(r, v) * th[(u * r) % h];
      out(u, v) = sum;
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(h * w);
    for (auto& value : out.values()) value *= scale;
  }
  return out;
}

void require_finite(const Plane& plane, const char* op) {
  require(all_finite(plane), ErrorKind::kInvalidInput,
          std::string(op) + ": plane contains non-finite values");
}

void require_colorspace(const Image& image, Colorspace expected, const char* op) {
  require(image.colorspace() == expected, ErrorKind::kColorspace,
          std::string(op) + ": unexpected colorspace tag");
}

// Reflect-101 indexing: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
std::size_t reflect_index(std::ptrdiff_t i, std::ptrdiff_t n) {
  if (n == 1) return 0;
  const std::ptrdiff_t period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return static_cast<std::size_t>(i);
}

std::size_t wrap_index(std::ptrdiff_t i, std::ptrdiff_t n) {
  i %= n;
  if (i < 0) i += n;
  return static_cast<std::size_t>(i);
}

}  // namespace

Plane dct2(const Plane& plane) {
  require_finite(plane, "dct2");
  return separable_dct(plane, /*forward=*/true);
}

Plane idct2(const Plane& coefficients) {
  require_finite(coefficients, "idct2");
  return separable_dct(coefficients, /*forward=*/false);
}

ComplexPlane fft2(const Plane& plane) {
  require_finite(plane, "fft2");
  std::vector<Complex> values(plane.values().begin(), plane.values().end());
  return separable_dft(ComplexPlane(plane.height(), plane.width(), std::move(values)),
                       /*inverse=*/false);
}

ComplexPlane fft2(const ComplexPlane& plane) {
  require(all_finite(plane), ErrorKind::kInvalidInput,
          "fft2: spectrum contains non-finite values");
  return separable_dft(plane, /*inverse=*/false);
}

ComplexPlane ifft2_complex(const ComplexPlane& spectrum) {
  require(all_finite(spectrum), ErrorKind::kInvalidInput,
          "ifft2: spectrum contains non-finite values");
  return separable_dft(spectrum, /*inverse=*/true);
}

Plane ifft2(const ComplexPlane& spectrum) {
  const ComplexPlane full = ifft2_complex(spectrum);
  Plane out(full.height(), full.width());
  double residue = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    out.values()[i] = full.values()[i].real();
    residue = std::max(residue, std::abs(full.values()[i].imag()));
  }
  require(residue <= kMaxImaginaryResidue, ErrorKind::kSpectralAsymmetry,
          "ifft2: imaginary residue " + std::to_string(residue) +
              " exceeds tolerance; spectrum is not conjugate-symmetric");
  return out;
}

Image rgb_to_yuv(const Image& image) {
  require_colorspace(image, Colorspace::kRgb, "rgb_to_yuv");
  Image out(image.height(), image.width(), Colorspace::kYuv);
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      const double red = image(0, r, c);
      const double green = image(1, r, c);
      const double blue = image(2, r, c);
      const double y = luma(red, green, blue);
      out(0, r, c) = y;
      out(1, r, c) = 0.5 * (blue - y) / (1.0 - kLumaB);
      out(2, r, c) = 0.5 * (red - y) / (1.0 - kLumaR);
    }
  }
  return out;
}

Image yuv_to_rgb(const Image& image) {
  require_colorspace(image, Colorspace::kYuv, "yuv_to_rgb");
  Image out(image.height(), image.width(), Colorspace::kRgb);
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      const double y = image(0, r, c);
      const double blue = y + 2.0 * (1.0 - kLumaB) * image(1, r, c);
      const double red = y + 2.0 * (1.0 - kLumaR) * image(2, r, c);
      out(0, r, c) = red;
      out(1, r, c) = (y - kLumaR * red - kLumaB * blue) / kLumaG;
      out(2, r, c) = blue;
    }
  }
  return out;
}

Image clamp_unit(const Image& image) {
  Image out = image;
  for (double& v : out.values()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

Kernel gaussian_kernel(double sigma, std::size_t size) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::kParameter,
          "gaussian_kernel: sigma must be positive");
  require(size % 2 == 1, ErrorKind::kParameter,
          "gaussian_kernel: size must be odd, got " + std::to_string(size));
  Kernel kernel;
  kernel.size = size;
  kernel.weights.assign(size * size, 0.0);
  const auto radius = static_cast<std::ptrdiff_t>(size / 2);
  const double denom = 2.0 * sigma * sigma;
  double total = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
      const double w = std::exp(-static_cast<double>(i * i + j * j) / denom);
      kernel.weights[static_cast<std::size_t>((i + radius) * static_cast<std::ptrdiff_t>(size) +
                                              (j + radius))] = w;
      total += w;
    }
  }
  for (double& w : kernel.weights) w /= total;
  return kernel;
}

std::size_t gaussian_kernel_size(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::kParameter,
          "gaussian_kernel_size: sigma must be positive");
  auto size = static_cast<std::size_t>(std::ceil(6.0 * sigma));
  if (size % 2 == 0) ++size;
  return std::max<std::size_t>(size, 3);
}

Plane convolve2d(const Plane& plane, const Kernel& kernel, Boundary boundary) {
  require(kernel.size % 2 == 1 && kernel.weights.size() == kernel.size * kernel.size,
          ErrorKind::kParameter, "convolve2d: malformed kernel");
  require(kernel.size <= plane.height() && kernel.size <= plane.width(),
          ErrorKind::kParameter,
          "convolve2d: kernel of size " + std::to_string(kernel.size) +
              " is larger than the plane");
  const auto h = static_cast<std::ptrdiff_t>(plane.height());
  const auto w = static_cast<std::ptrdiff_t>(plane.width());
  const auto radius = static_cast<std::ptrdiff_t>(kernel.radius());
  const auto ks = static_cast<std::ptrdiff_t>(kernel.size);
  auto index = boundary == Boundary::kCircular ? wrap_index : reflect_index;

  Plane out(plane.height(), plane.width());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      double sum = 0.0;
      for (std::ptrdiff_t a = 0; a < ks; ++a) {
        const std::size_t src_r = index(r + radius - a, h);
        for (std::ptrdiff_t b = 0; b < ks; ++b) {
          const std::size_t src_c = index(c + radius - b, w);
          sum += kernel(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) *
                 plane(src_r, src_c);
        }
      }
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = sum;
    }
  }
  return out;
}

Image convolve_channels(const Image& image, const Kernel& kernel,
                        Boundary boundary) {
  Image out(image.height(), image.width(), image.colorspace());
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    out.set_channel(ch, convolve2d(image.channel(ch), kernel, boundary));
  }
  return out;
}

}  // namespace freqguard

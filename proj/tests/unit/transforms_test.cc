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

#include <gtest/gtest.h>

#include "test_util.h"

namespace freqguard {
namespace {

using testing::direct_dct2;
using testing::direct_dft2;
using testing::random_image;
using testing::random_plane;

TEST(Dct2Test, MatchesDirectSumOnRectangles) {
  std::mt19937_64 rng(1);
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{4, 4}, {5, 3}, {8, 6}, {1, 7}}) {
    const Plane x = random_plane(h, w, rng);
    EXPECT_LT(max_abs_diff(dct2(x), direct_dct2(x)), 1e-12) << h << "x" << w;
  }
}

TEST(Dct2Test, ConstantPlaneConcentratesInDc) {
  const Plane x(8, 8, 0.25);
  const Plane X = dct2(x);
  EXPECT_NEAR(X(0, 0), 0.25 * 8.0, 1e-12);  // sqrt(64) * 0.25
  for (std::size_t i = 1; i < X.size(); ++i) EXPECT_NEAR(X.values()[i], 0.0, 1e-12);
}

TEST(Dct2Test, RoundTripAndParseval) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Plane x = random_plane(12, 12, rng);
    const Plane X = dct2(x);
    EXPECT_LT(max_abs_diff(idct2(X), x), 1e-12);
    EXPECT_NEAR(squared_norm(X.values()), squared_norm(x.values()), 1e-10);
  }
}

TEST(Fft2Test, MatchesDirectDft) {
  std::mt19937_64 rng(3);
  const Plane x = random_plane(6, 5, rng);
  const ComplexPlane got = fft2(x);
  const ComplexPlane want = direct_dft2(x);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_LT(std::abs(got.values()[i] - want.values()[i]), 1e-11);
  }
}

TEST(Fft2Test, RoundTripAndParseval) {
  std::mt19937_64 rng(4);
  const Plane x = random_plane(8, 8, rng);
  const ComplexPlane X = fft2(x);
  EXPECT_LT(max_abs_diff(ifft2(X), x), 1e-12);
  double spectral = 0.0;
  for (auto v : X.values()) spectral += std::norm(v);
  EXPECT_NEAR(spectral / 64.0, squared_norm(x.values()), 1e-10);
}

TEST(Fft2Test, AsymmetricSpectrumIsRejected) {
  ComplexPlane X(4, 4);
  X(1, 2) = 1.0;  // no conjugate partner at (3, 2)
  try {
    ifft2(X);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpectralAsymmetry);
  }
  EXPECT_NO_THROW(ifft2_complex(X));
}

TEST(ColorTest, LumaWeightsSumToOne) {
  EXPECT_NEAR(kLumaR + kLumaG + kLumaB, 1.0, 1e-15);
  EXPECT_NEAR(luma(1, 1, 1), 1.0, 1e-15);
}

TEST(ColorTest, KnownConversions) {
  Image white(1, 1, Colorspace::kRgb, 1.0);
  const Image yuv = rgb_to_yuv(white);
  EXPECT_NEAR(yuv(0, 0, 0), 1.0, 1e-15);
  EXPECT_NEAR(yuv(1, 0, 0), 0.0, 1e-15);
  EXPECT_NEAR(yuv(2, 0, 0), 0.0, 1e-15);

  Image blue(1, 1);
  blue(2, 0, 0) = 1.0;
  const Image b = rgb_to_yuv(blue);
  EXPECT_NEAR(b(0, 0, 0), kLumaB, 1e-15);
  EXPECT_NEAR(b(1, 0, 0), 0.5, 1e-15);  // U peaks at pure blue
  Image red(1, 1);
  red(0, 0, 0) = 1.0;
  EXPECT_NEAR(rgb_to_yuv(red)(2, 0, 0), 0.5, 1e-15);  // V peaks at pure red
}

TEST(ColorTest, RoundTripAndTagChecks) {
  std::mt19937_64 rng(5);
  const Image x = random_image(7, 9, rng);
  const Image yuv = rgb_to_yuv(x);
  EXPECT_EQ(yuv.colorspace(), Colorspace::kYuv);
  EXPECT_LT(max_abs_diff(yuv_to_rgb(yuv), x), 1e-12);
  EXPECT_THROW(rgb_to_yuv(yuv), Error);
  EXPECT_THROW(yuv_to_rgb(x), Error);
}

TEST(ClampTest, ClampsToUnitInterval) {
  Image x(1, 2);
  x(0, 0, 0) = -0.5;
  x(0, 0, 1) = 1.5;
  x(1, 0, 0) = 0.3;
  const Image y = clamp_unit(x);
  EXPECT_EQ(y(0, 0, 0), 0.0);
  EXPECT_EQ(y(0, 0, 1), 1.0);
  EXPECT_EQ(y(1, 0, 0), 0.3);
}

TEST(GaussianKernelTest, NormalizedSymmetricAndSized) {
  for (double sigma : {0.3, 0.8, 1.5, 2.0}) {
    const std::size_t size = gaussian_kernel_size(sigma);
    EXPECT_EQ(size % 2, 1u);
    // Smallest odd size covering 6 sigma, at least 3.
    EXPECT_GE(size, 3u);
    EXPECT_GE(static_cast<double>(size), 6.0 * sigma);
    if (size > 3) EXPECT_LT(static_cast<double>(size - 2), 6.0 * sigma);
    const Kernel k = gaussian_kernel(sigma, size);
    double sum = 0.0;
    for (double v : k.weights) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-14);
    for (std::size_t r = 0; r < size; ++r) {
      for (std::size_t c = 0; c < size; ++c) {
        EXPECT_DOUBLE_EQ(k(r, c), k(size - 1 - r, c));
        EXPECT_DOUBLE_EQ(k(r, c), k(c, r));
        // Separable Gaussian: ratio to the center follows exp(-d^2 / 2 sigma^2).
        const double dr = static_cast<double>(r) - static_cast<double>(k.radius());
        const double dc = static_cast<double>(c) - static_cast<double>(k.radius());
        const double center = k(k.radius(), k.radius());
        EXPECT_NEAR(k(r, c) / center, std::exp(-(dr * dr + dc * dc) / (2 * sigma * sigma)),
                    1e-12);
      }
    }
  }
  EXPECT_EQ(gaussian_kernel_size(1.0), 7u);
  EXPECT_EQ(gaussian_kernel_size(0.1), 3u);
  EXPECT_THROW(gaussian_kernel(1.0, 4), Error);
  EXPECT_THROW(gaussian_kernel(0.0, 3), Error);
}

TEST(ConvolveTest, DeltaKernelIsIdentity) {
  std::mt19937_64 rng(6);
  const Plane x = random_plane(5, 6, rng);
  Kernel delta{3, {0, 0, 0, 0, 1, 0, 0, 0, 0}};
  EXPECT_LT(max_abs_diff(convolve2d(x, delta, Boundary::kCircular), x), 1e-15);
  EXPECT_LT(max_abs_diff(convolve2d(x, delta, Boundary::kReflect), x), 1e-15);
}

TEST(ConvolveTest, ShiftKernelMovesContentCircularly) {
  // Weight at (1, 2) reads x[r, c - 1]: a shift right by one column.
  Plane x(3, 4);
  x(1, 1) = 1.0;
  Kernel shift{3, {0, 0, 0, 0, 0, 1, 0, 0, 0}};
  const Plane y = convolve2d(x, shift, Boundary::kCircular);
  EXPECT_EQ(y(1, 2), 1.0);
  EXPECT_NEAR(squared_norm(y.values()), 1.0, 0.0);
}

TEST(ConvolveTest, ReflectBoundaryHandComputed) {
  // 1-D behaviour along one row with a horizontal [1, 2, 1] / 4 kernel.
  Plane x(1, 4, std::vector<double>{1, 2, 3, 4});
  Plane tall(3, 4);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) tall(r, c) = x(0, c);
  }
  Kernel k{3, {0, 0, 0, 0.25, 0.5, 0.25, 0, 0, 0}};
  const Plane y = convolve2d(tall, k, Boundary::kReflect);
  // reflect-101: x[-1] = x[1], x[4] = x[2]
  EXPECT_NEAR(y(1, 0), 0.25 * 2 + 0.5 * 1 + 0.25 * 2, 1e-15);
  EXPECT_NEAR(y(1, 1), 0.25 * 1 + 0.5 * 2 + 0.25 * 3, 1e-15);
  EXPECT_NEAR(y(1, 3), 0.25 * 3 + 0.5 * 4 + 0.25 * 3, 1e-15);
}

TEST(ConvolveTest, CircularMatchesSpectralProductFromDirectDft) {
  std::mt19937_64 rng(7);
  const Plane x = random_plane(6, 6, rng);
  const Kernel k = gaussian_kernel(0.9, 5);
  // Embed the centered kernel at offsets (a - h) mod H.
  Plane padded(6, 6);
  const std::size_t h = k.radius();
  for (std::size_t a = 0; a < k.size; ++a) {
    for (std::size_t b = 0; b < k.size; ++b) padded((a + 6 - h) % 6, (b + 6 - h) % 6) += k(a, b);
  }
  const ComplexPlane X = direct_dft2(x);
  const ComplexPlane K = direct_dft2(padded);
  ComplexPlane Y(6, 6);
  for (std::size_t i = 0; i < Y.size(); ++i) Y.values()[i] = X.values()[i] * K.values()[i];
  EXPECT_LT(max_abs_diff(convolve2d(x, k, Boundary::kCircular), testing::direct_idft2_real(Y)),
            1e-12);
}

TEST(ConvolveTest, KernelLargerThanPlaneIsRejected) {
  EXPECT_THROW(convolve2d(Plane(3, 3), gaussian_kernel(1.0, 5), Boundary::kCircular), Error);
}

TEST(ConvolveTest, ChannelsAreIndependent) {
  std::mt19937_64 rng(8);
  const Image x = random_image(6, 6, rng);
  const Kernel k = gaussian_kernel(1.0, 5);
  const Image y = convolve_channels(x, k, Boundary::kReflect);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    EXPECT_EQ(y.channel(ch), convolve2d(x.channel(ch), k, Boundary::kReflect));
  }
}

}  // namespace
}  // namespace freqguard

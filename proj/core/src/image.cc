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

#include "freqguard/image.h"

#include <algorithm>
#include <cmath>

namespace freqguard {

bool all_finite(const Plane& plane) {
  return std::all_of(plane.values().begin(), plane.values().end(),
                     [](double v) { return std::isfinite(v); });
}

bool all_finite(const ComplexPlane& plane) {
  return std::all_of(plane.values().begin(), plane.values().end(),
                     [](const std::complex<double>& v) {
                       return std::isfinite(v.real()) && std::isfinite(v.imag());
                     });
}

Image::Image(std::size_t height, std::size_t width, Colorspace colorspace,
             double fill)
    : height_(height),
      width_(width),
      colorspace_(colorspace),
      values_(kChannels * height * width, fill) {
  require(height > 0 && width > 0, ErrorKind::kShape, "image must be non-empty");
}

Image::Image(std::size_t height, std::size_t width, std::vector<double> values,
             Colorspace colorspace)
    : height_(height),
      width_(width),
      colorspace_(colorspace),
      values_(std::move(values)) {
  require(height > 0 && width > 0, ErrorKind::kShape, "image must be non-empty");
  require(values_.size() == kChannels * height * width, ErrorKind::kShape,
          "image value count does not match 3x" + std::to_string(height) + "x" +
              std::to_string(width));
}

Plane Image::channel(std::size_t ch) const {
  auto src = channel_values(ch);
  return Plane(height_, width_, std::vector<double>(src.begin(), src.end()));
}

void Image::set_channel(std::size_t ch, const Plane& plane) {
  require(plane.height() == height_ && plane.width() == width_, ErrorKind::kShape,
          "channel plane shape does not match image");
  std::copy(plane.values().begin(), plane.values().end(),
            channel_values(ch).begin());
}

double max_abs_diff(const Plane& a, const Plane& b) {
  require(a.same_shape(b), ErrorKind::kShape, "plane shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

double max_abs_diff(const Image& a, const Image& b) {
  require(a.same_shape(b), ErrorKind::kShape, "image shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

}  // namespace freqguard

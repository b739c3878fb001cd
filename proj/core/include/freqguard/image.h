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

#ifndef FREQGUARD_IMAGE_H_
#define FREQGUARD_IMAGE_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "freqguard/error.h"

namespace freqguard {

// A single channel of height x width samples stored row-major.
template <typename T>
class Grid {
 public:
  Grid(std::size_t height, std::size_t width, T fill = T{})
      : height_(height), width_(width), values_(height * width, fill) {
    require(height > 0 && width > 0, ErrorKind::kShape, "grid must be non-empty");
  }
  Grid(std::size_t height, std::size_t width, std::vector<T> values)
      : height_(height), width_(width), values_(std::move(values)) {
    require(height > 0 && width > 0, ErrorKind::kShape, "grid must be non-empty");
    require(values_.size() == height * width, ErrorKind::kShape,
            "grid value count does not match " + std::to_string(height) + "x" +
                std::to_string(width));
  }

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return values_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * width_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return values_[r * width_ + c];
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  bool same_shape(const Grid& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<T> values_;
};

using Plane = Grid<double>;
using ComplexPlane = Grid<std::complex<double>>;

bool all_finite(const Plane& plane);
bool all_finite(const ComplexPlane& plane);

enum class Colorspace { kRgb, kYuv };

// Three-channel image, channel-major. RGB images live in [0, 1].
class Image {
 public:
  static constexpr std::size_t kChannels = 3;

  Image(std::size_t height, std::size_t width,
        Colorspace colorspace = Colorspace::kRgb, double fill = 0.0);
  Image(std::size_t height, std::size_t width, std::vector<double> values,
        Colorspace colorspace = Colorspace::kRgb);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t plane_size() const { return height_ * width_; }
  std::size_t size() const { return values_.size(); }
  Colorspace colorspace() const { return colorspace_; }

  double& operator()(std::size_t ch, std::size_t r, std::size_t c) {
    return values_[ch * plane_size() + r * width_ + c];
  }
  double operator()(std::size_t ch, std::size_t r, std::size_t c) const {
    return values_[ch * plane_size() + r * width_ + c];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> channel_values(std::size_t ch) {
    return {values_.data() + ch * plane_size(), plane_size()};
  }
  std::span<const double> channel_values(std::size_t ch) const {
    return {values_.data() + ch * plane_size(), plane_size()};
  }

  Plane channel(std::size_t ch) const;
  void set_channel(std::size_t ch, const Plane& plane);

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_;
  std::size_t width_;
  Colorspace colorspace_;
  std::vector<double> values_;
};

// Largest absolute elementwise difference; shapes must match.
double max_abs_diff(const Plane& a, const Plane& b);
double max_abs_diff(const Image& a, const Image& b);

// Square convolution kernel of odd side.
struct Kernel {
  std::size_t size = 1;
  std::vector<double> weights{1.0};

  double operator()(std::size_t r, std::size_t c) const {
    return weights[r * size + c];
  }
  std::size_t radius() const { return size / 2; }
};

}  // namespace freqguard

#endif  // FREQGUARD_IMAGE_H_

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

#ifndef FREQGUARD_ERROR_H_
#define FREQGUARD_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace freqguard {

// Categories of failure surfaced by the library. The CLI maps kFormat to
// exit code 2 and every other kind to exit code 3.
enum class ErrorKind {
  kInvalidInput,       // non-finite values, malformed arguments
  kShape,              // dimension mismatch between operands
  kParameter,          // out-of-range configuration value
  kColorspace,         // image carries the wrong colorspace tag
  kSpectralAsymmetry,  // inverse FFT left a non-negligible imaginary part
  kFormat,             // on-disk data does not match the expected layout
  kCapacity,           // not enough eligible samples
  kContract,           // precondition of an operation violated
  kDegenerateInput,    // zero-norm vectors and similar
  kTraining,           // optimizer diverged
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace freqguard

#endif  // FREQGUARD_ERROR_H_

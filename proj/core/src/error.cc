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

#include "freqguard/error.h"

namespace freqguard {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kColorspace: return "colorspace error";
    case ErrorKind::kSpectralAsymmetry: return "spectral asymmetry";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kCapacity: return "capacity error";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kTraining: return "training error";
  }
  return "error";
}

}  // namespace freqguard

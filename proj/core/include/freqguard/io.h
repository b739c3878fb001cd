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

#ifndef FREQGUARD_IO_H_
#define FREQGUARD_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freqguard {

// Writes to a sibling temporary file and renames it into place, so readers
// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Little-endian float64 encoding regardless of host byte order.
std::string encode_f64_le(std::span<const double> values);
std::vector<double> decode_f64_le(std::string_view bytes);

}  // namespace freqguard

#endif  // FREQGUARD_IO_H_

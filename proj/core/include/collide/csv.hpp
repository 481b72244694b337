// Copyright 2026 The collide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collide {

/// %.17g formatting: 17 significant digits, lossless for doubles.
std::string format_double(double value);

/// Comma-separated writer with LF line endings. The first column is a key
/// (step, lag or label), the rest are doubles.
class CsvWriter {
   public:
    CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header);

    void row(std::size_t key, std::span<const double> values);
    void row(std::string_view key, std::span<const double> values);
    void close();
    const std::filesystem::path &path() const { return path_; }

   private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
    std::string line_;
};

}  // namespace collide

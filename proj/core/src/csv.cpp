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

#include "collide/csv.hpp"

#include <array>
#include <charconv>

#include "collide/errors.hpp"

namespace collide {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw NumericalError("failed to format a double");
    }
    return {buf.data(), end};
}

CsvWriter::CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::string_view key, std::span<const double> values) {
    if (values.size() + 1 != columns_) {
        throw ArgumentError("CSV row has " + std::to_string(values.size() + 1) + " columns, header has " +
                            std::to_string(columns_));
    }
    line_.assign(key);
    std::array<char, 64> buf{};
    for (double v : values) {
        line_.push_back(',');
        const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
        line_.append(buf.data(), end);
    }
    line_.push_back('\n');
    out_ << line_;
    if (!out_) {
        throw IoError("write to " + path_.string() + " failed");
    }
}

void CsvWriter::row(std::size_t key, std::span<const double> values) { row(std::to_string(key), values); }

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) {
        throw IoError("closing " + path_.string() + " failed");
    }
}

}  // namespace collide

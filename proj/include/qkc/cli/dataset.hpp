// Copyright 2026 The qkc Authors
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

/**
 * @file
 * Dataset files: CSV and JSON rows of complex features, a label bit and an
 * optional weight.
 *
 * CSV: one row per datum; complex entries as `a+bi`, reals bare. The label is
 * the last column unless a header names a `label` column; a header column
 * named `weight` holds per-row weights. Blank lines and lines starting with
 * `#` are skipped.
 *
 * JSON: an array of rows `[features, label]` or `[features, label, weight]`,
 * or objects with `features`, `label` and `weight` keys. Features are
 * numbers or `[re, im]` pairs. A single bare row is accepted too.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkc/encoding.hpp"

namespace qkc::cli {

struct DatasetRow {
  CVec features;
  Label label = Label::zero;
  std::optional<double> weight;
};

struct Dataset {
  std::vector<DatasetRow> rows;

  std::size_t feature_dim() const { return rows.empty() ? 0 : static_cast<std::size_t>(rows.front().features.size()); }
  bool has_weights() const;
  std::vector<RawDatum> raw(bool use_weights) const;
};

enum class DatasetFormat { csv, json };

/// From the file extension (.csv or .json).
DatasetFormat format_for(const std::filesystem::path& path);
DatasetFormat format_from_string(std::string_view name);

/// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" (also with j).
Complex parse_complex(std::string_view text);

Dataset parse_csv(std::istream& in);
Dataset parse_json(std::string_view text);
Dataset ingest(const std::filesystem::path& path, std::optional<DatasetFormat> format = std::nullopt);

/// Shortest round-trip decimal form.
std::string format_double(double v);
std::string format_complex(Complex z);

void write_csv(const Dataset& data, std::ostream& out);
std::string to_json_text(const Dataset& data);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace qkc::cli

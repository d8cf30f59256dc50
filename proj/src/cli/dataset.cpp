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

#include "qkc/cli/dataset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qkc/error.hpp"

namespace qkc::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col) + ": ";
}

Label parse_label(std::string_view s, std::size_t row, std::size_t col) {
  s = trim(s);
  if (s == "0") return Label::zero;
  if (s == "1") return Label::one;
  throw DataError(where(row, col) + "label must be 0 or 1, got '" + std::string(s) + "'");
}

void check_homogeneous(const Dataset& d) {
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    if (d.rows[r].features.size() != d.rows.front().features.size()) {
      throw DataError("row " + std::to_string(r + 1) + ": has " +
                      std::to_string(d.rows[r].features.size()) + " features, expected " +
                      std::to_string(d.rows.front().features.size()));
    }
    if (d.rows[r].features.size() == 0) {
      throw DataError("row " + std::to_string(r + 1) + ": no features");
    }
  }
}

Complex json_entry(const nlohmann::json& v, std::size_t row, std::size_t col) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_string()) {
    try {
      return parse_complex(v.get<std::string>());
    } catch (const DataError& e) {
      throw DataError(where(row, col) + e.what());
    }
  }
  throw DataError(where(row, col) + "feature must be a number or an [re, im] pair");
}

}  // namespace

bool Dataset::has_weights() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const DatasetRow& r) { return r.weight.has_value(); });
}

std::vector<RawDatum> Dataset::raw(bool use_weights) const {
  std::vector<RawDatum> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back({r.features, r.label, use_weights && r.weight ? *r.weight : 1.0});
  }
  return out;
}

DatasetFormat format_for(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return DatasetFormat::csv;
  if (ext == ".json") return DatasetFormat::json;
  throw DataError("cannot infer the format of '" + path.string() + "'; use --format");
}

DatasetFormat format_from_string(std::string_view name) {
  if (name == "csv") return DatasetFormat::csv;
  if (name == "json") return DatasetFormat::json;
  throw DataError("unknown dataset format '" + std::string(name) + "'");
}

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  const auto fail = [&]() -> Complex {
    throw DataError("cannot parse '" + std::string(text) + "' as a number");
  };
  if (s.empty()) return fail();
  if (s.back() != 'i' && s.back() != 'j') {
    if (auto v = parse_real(s)) return {*v, 0.0};
    return fail();
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  const auto imag_part = [&](std::string_view t) -> std::optional<double> {
    t = trim(t);
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split_at == std::string_view::npos) {
    if (auto im = imag_part(body)) return {0.0, *im};
    return fail();
  }
  const auto re = parse_real(body.substr(0, split_at));
  const auto im = imag_part(body.substr(split_at));
  if (!re || !im) return fail();
  return {*re, *im};
}

Dataset parse_csv(std::istream& in) {
  Dataset d;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  std::optional<std::size_t> label_col, weight_col;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t, ',');
    if (first) {
      first = false;
      const bool header = std::any_of(fields.begin(), fields.end(), [](std::string_view f) {
        try {
          parse_complex(f);
          return false;
        } catch (const DataError&) {
          return true;
        }
      });
      columns = fields.size();
      if (header) {
        for (std::size_t c = 0; c < fields.size(); ++c) {
          if (fields[c] == "label") label_col = c;
          if (fields[c] == "weight") weight_col = c;
        }
        if (!label_col) label_col = fields.size() - 1;
        continue;
      }
      label_col = fields.size() - 1;
    }
    if (fields.size() != columns) {
      throw DataError("row " + std::to_string(row) + ": has " + std::to_string(fields.size()) +
                      " columns, expected " + std::to_string(columns));
    }
    DatasetRow r;
    std::vector<Complex> feats;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == *label_col) {
        r.label = parse_label(fields[c], row, c + 1);
      } else if (weight_col && c == *weight_col) {
        const auto w = parse_real(fields[c]);
        if (!w || *w < 0.0) throw DataError(where(row, c + 1) + "weight must be a nonnegative number");
        r.weight = *w;
      } else {
        try {
          feats.push_back(parse_complex(fields[c]));
        } catch (const DataError& e) {
          throw DataError(where(row, c + 1) + e.what());
        }
      }
    }
    r.features = Eigen::Map<const CVec>(feats.data(), static_cast<Eigen::Index>(feats.size()));
    d.rows.push_back(std::move(r));
  }
  check_homogeneous(d);
  return d;
}

Dataset parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("JSON parse error: ") + e.what());
  }
  if (j.is_object() && j.contains("rows")) j = j["rows"];
  if (!j.is_array()) throw DataError("JSON dataset must be an array of rows");
  // A bare single row [features, label(, weight)]; a row list never has a
  // number in second place.
  if ((j.size() == 2 || j.size() == 3) && j[1].is_number()) j = nlohmann::json::array({j});
  Dataset d;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    const nlohmann::json* feats = nullptr;
    const nlohmann::json* label = nullptr;
    const nlohmann::json* weight = nullptr;
    if (row.is_array() && (row.size() == 2 || row.size() == 3)) {
      feats = &row[0];
      label = &row[1];
      if (row.size() == 3) weight = &row[2];
    } else if (row.is_object() && row.contains("features") && row.contains("label")) {
      feats = &row["features"];
      label = &row["label"];
      if (row.contains("weight")) weight = &row["weight"];
    } else {
      throw DataError("row " + std::to_string(r + 1) + ": expected [features, label(, weight)]");
    }
    if (!feats->is_array()) throw DataError("row " + std::to_string(r + 1) + ": features must be an array");
    DatasetRow out;
    out.features.resize(static_cast<Eigen::Index>(feats->size()));
    for (std::size_t c = 0; c < feats->size(); ++c) {
      out.features(static_cast<Eigen::Index>(c)) = json_entry((*feats)[c], r + 1, c + 1);
    }
    if (!label->is_number_integer() || (label->get<long long>() != 0 && label->get<long long>() != 1)) {
      throw DataError("row " + std::to_string(r + 1) + ": label must be 0 or 1");
    }
    out.label = label_from_int(label->get<long long>());
    if (weight) {
      if (!weight->is_number() || weight->get<double>() < 0.0) {
        throw DataError("row " + std::to_string(r + 1) + ": weight must be a nonnegative number");
      }
      out.weight = weight->get<double>();
    }
    d.rows.push_back(std::move(out));
  }
  check_homogeneous(d);
  return d;
}

Dataset ingest(const std::filesystem::path& path, std::optional<DatasetFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  const DatasetFormat f = format ? *format : format_for(path);
  if (f == DatasetFormat::csv) return parse_csv(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

void write_csv(const Dataset& data, std::ostream& out) {
  const std::size_t n = data.feature_dim();
  for (std::size_t c = 0; c < n; ++c) out << 'x' << c << ',';
  out << "label";
  const bool weights = data.has_weights();
  if (weights) out << ",weight";
  out << '\n';
  for (const auto& r : data.rows) {
    for (Eigen::Index c = 0; c < r.features.size(); ++c) out << format_complex(r.features(c)) << ',';
    out << to_int(r.label);
    if (weights) out << ',' << format_double(*r.weight);
    out << '\n';
  }
}

std::string to_json_text(const Dataset& data) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : data.rows) {
    nlohmann::json feats = nlohmann::json::array();
    for (Eigen::Index c = 0; c < r.features.size(); ++c) {
      const Complex z = r.features(c);
      if (z.imag() == 0.0) {
        feats.push_back(z.real());
      } else {
        feats.push_back({z.real(), z.imag()});
      }
    }
    nlohmann::json row = {feats, to_int(r.label)};
    if (r.weight) row.push_back(*r.weight);
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace qkc::cli

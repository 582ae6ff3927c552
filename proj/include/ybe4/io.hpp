// Copyright 2026 The ybe4 Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ybe4/errors.hpp"
#include "ybe4/linalg.hpp"

namespace ybe4 {

using Json = nlohmann::json;

inline constexpr const char* kFileSchemaVersion = "1";

/// {"version": "1", "dim": n, "rows": [[[re, im], ...], ...], "name"?, "family"?}
struct MatrixFile {
  Matrix matrix;
  std::optional<std::string> name;
  std::optional<std::string> family;
};

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const MatrixFile& f) {
  Json j{{"version", kFileSchemaVersion}, {"dim", f.matrix.dim()}, {"rows", matrix_to_json(f.matrix)}};
  if (f.name) j["name"] = *f.name;
  if (f.family) j["family"] = *f.family;
  return j;
}

/// Doubles print as the shortest string that reads back to the same bits.
inline std::string write_matrix_file(const MatrixFile& f) { return to_json(f).dump(2) + "\n"; }

namespace detail {

inline double json_number(const Json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string("matrix file: ") + what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string("matrix file: ") + what + " is not finite");
  return x;
}

}  // namespace detail

inline Matrix matrix_from_json(const Json& rows, std::optional<std::size_t> declared_dim = std::nullopt) {
  if (!rows.is_array()) throw ParseError("matrix file: rows must be an array");
  const std::size_t n = rows.size();
  if (declared_dim && *declared_dim != n) throw DimensionError("matrix file: dim does not match the row count");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = rows[i];
    if (!row.is_array()) throw ParseError("matrix file: each row must be an array");
    if (row.size() != n) throw DimensionError("matrix file: rows must form a square array");
    for (std::size_t j = 0; j < n; ++j) {
      const Json& e = row[j];
      if (!e.is_array() || e.size() != 2) throw ParseError("matrix file: entries must be [re, im] pairs");
      m(i, j) = Complex{detail::json_number(e[0], "re"), detail::json_number(e[1], "im")};
    }
  }
  return m;
}

inline MatrixFile parse_matrix_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("matrix file: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("matrix file: top level must be an object");
  if (j.contains("version") && !(j["version"].is_string() && j["version"] == kFileSchemaVersion))
    throw ParseError("matrix file: unsupported version");
  if (!j.contains("rows")) throw ParseError("matrix file: missing rows");
  std::optional<std::size_t> dim;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 0)
      throw ParseError("matrix file: dim must be a non-negative integer");
    dim = j["dim"].get<std::size_t>();
  }
  MatrixFile f;
  f.matrix = matrix_from_json(j["rows"], dim);
  if (j.contains("name") && j["name"].is_string()) f.name = j["name"].get<std::string>();
  if (j.contains("family") && j["family"].is_string()) f.family = j["family"].get<std::string>();
  return f;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ybe4

// Copyright 2026 The spinlab Authors.
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

// Serialization: JSON documents and CSV tables.
//
// Doubles are written with 17 significant digits so that files round-trip
// bit-exactly and repeated runs produce identical bytes.

#ifndef SPINLAB_IO_HPP
#define SPINLAB_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

using json = nlohmann::ordered_json;

/// {"n", "p", "adjusted", "spec": {"kind", "average_degree", "seed"},
///  "sparse", "entries": [["0,1:XZ", value], ...]}
json to_json(const DisorderSample& sample);
DisorderSample sample_from_json(const json& doc);

json to_json(const DisorderSpec& spec);
DisorderSpec spec_from_json(const json& doc, const std::string& where = "spec");

/// "%.17g"; NaN and infinities as "nan", "inf", "-inf".
std::string format_double(double v);

/// Minimal CSV table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace spinlab

#endif  // SPINLAB_IO_HPP

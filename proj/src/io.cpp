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

#include "spinlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "spinlab/error.hpp"

namespace spinlab {

json to_json(const DisorderSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["average_degree"] = spec.average_degree;
  j["seed"] = spec.seed;
  return j;
}

DisorderSpec spec_from_json(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw SchemaError(where, "expected an object");
  DisorderSpec s;
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw SchemaError(where + ".kind", "missing or not a string");
  try {
    s.kind = disorder_kind_from_string(doc["kind"].get<std::string>());
  } catch (const ParameterError& e) {
    throw SchemaError(where + ".kind", e.what());
  }
  if (doc.contains("average_degree")) {
    if (!doc["average_degree"].is_number())
      throw SchemaError(where + ".average_degree", "not a number");
    s.average_degree = doc["average_degree"].get<double>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer())
      throw SchemaError(where + ".seed", "not an integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  return s;
}

json to_json(const DisorderSample& sample) {
  json j;
  j["n"] = sample.config.n;
  j["p"] = sample.config.p;
  j["adjusted"] = sample.config.adjusted;
  j["spec"] = to_json(sample.spec);
  j["sparse"] = sample.sparse;
  json entries = json::array();
  for (const auto& e : sample.entries) entries.push_back(json::array({e.term.to_string(), e.value}));
  j["entries"] = std::move(entries);
  return j;
}

DisorderSample sample_from_json(const json& doc) {
  for (const char* key : {"n", "p", "entries"})
    if (!doc.contains(key)) throw SchemaError(key, "missing");
  ModelConfig config{doc["n"].get<int>(), doc["p"].get<int>(),
                     doc.value("adjusted", false)};
  config.validate();
  DisorderSample s;
  s.config = config;
  if (doc.contains("spec")) s.spec = spec_from_json(doc["spec"]);
  s.sparse = doc.value("sparse", false);

  // Canonical index of each term, looked up by its text form.
  const auto terms = enumerate_terms(config);
  std::unordered_map<std::string, std::uint64_t> index;
  index.reserve(terms.size());
  for (std::uint64_t t = 0; t < terms.size(); ++t) index.emplace(terms[t].to_string(), t);

  for (const auto& item : doc["entries"]) {
    if (!item.is_array() || item.size() != 2) throw SchemaError("entries", "expected [term, value]");
    const auto text = item[0].get<std::string>();
    const auto it = index.find(text);
    if (it == index.end()) throw SchemaError("entries", "unknown term '" + text + "'");
    s.entries.push_back({it->second, terms[it->second], item[1].get<double>()});
  }
  std::sort(s.entries.begin(), s.entries.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  if (!s.sparse && s.entries.size() != terms.size())
    throw SchemaError("entries", "dense sample must list every term");
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw DimensionError("CSV row width differs from header");
  rows_.push_back(std::move(cells));
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace spinlab

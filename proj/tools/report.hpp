// Copyright 2026 The mpsqvm Authors
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

// Tabular experiment output: one header row, '#' metadata lines, CSV or
// JSON body. Numbers are formatted with std::to_chars so the output does
// not depend on the locale.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace mpsqvm::cli {

using Cell = std::variant<std::int64_t, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { kCsv, kJson };

struct Report {
  std::string command;
  /// Fully resolved configuration, including the seed.
  nlohmann::ordered_json config;
  /// Extra key/value results (fidelity, definitions, warnings).
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  Table table;
  /// Empty unless the caller asked for a timestamp.
  std::string timestamp;
};

std::string format_number(double v);

void write_report(std::ostream& out, const Report& report, Format format);

/// Python/matplotlib script that re-plots a report written to data_path.
std::string plot_script(const Report& report, const std::string& data_path,
                        Format format);

}  // namespace mpsqvm::cli

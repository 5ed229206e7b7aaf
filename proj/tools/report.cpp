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

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpsqvm::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<double>(c);
}

std::string meta_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

void write_report(std::ostream& out, const Report& report, Format format) {
  const Table& t = report.table;
  if (format == Format::kJson) {
    nlohmann::ordered_json j;
    j["command"] = report.command;
    j["config"] = report.config;
    j["summary"] = report.summary;
    if (!report.timestamp.empty()) j["timestamp"] = report.timestamp;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json row;
      for (std::size_t c = 0; c < t.columns.size(); ++c) row[t.columns[c]] = cell_json(r[c]);
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
    return;
  }

  out << "# command: " << report.command << '\n';
  out << "# config: " << report.config.dump() << '\n';
  for (const auto& [key, value] : report.summary.items()) {
    out << "# " << key << ": " << meta_text(value) << '\n';
  }
  if (!report.timestamp.empty()) out << "# timestamp: " << report.timestamp << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    out << (c ? "," : "") << t.columns[c];
  }
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << cell_text(r[c]);
    out << '\n';
  }
}

std::string plot_script(const Report& report, const std::string& data_path,
                        Format format) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "# Re-plots " << report.command << " output. Requires matplotlib.\n"
       "import csv\nimport json\nimport sys\n"
       "from collections import defaultdict\n"
       "import matplotlib\nmatplotlib.use('Agg')\n"
       "import matplotlib.pyplot as plt\n\n"
    << "DATA = " << nlohmann::json(data_path).dump() << "\n"
    << "FORMAT = " << (format == Format::kJson ? "'json'" : "'csv'") << "\n\n"
    << "def load():\n"
       "    with open(DATA) as f:\n"
       "        if FORMAT == 'json':\n"
       "            return json.load(f)['rows']\n"
       "        lines = [l for l in f if not l.startswith('#')]\n"
       "    return [{k: float(v) for k, v in r.items()} for r in csv.DictReader(lines)]\n\n"
       "def groups(rows, key):\n"
       "    out = defaultdict(list)\n"
       "    for r in rows:\n"
       "        out[r[key]].append(r)\n"
       "    return sorted(out.items())\n\n"
       "rows = load()\n";

  const std::string& c = report.command;
  if (c == "page-curve") {
    s << "fig, ax = plt.subplots()\n"
         "x = [r['bond_index'] for r in rows]\n"
         "ax.errorbar(x, [r['mean_entropy_nats'] for r in rows],\n"
         "            yerr=[r['stderr'] for r in rows], fmt='o', label='MPS')\n"
         "ax.plot(x, [r['page_entropy_nats'] for r in rows], '-', label='Page')\n"
         "ax.set_xlabel('bond'); ax.set_ylabel('entropy (nats)'); ax.legend()\n";
  } else if (c == "fidelity-sweep") {
    s << "fig, ax = plt.subplots()\n"
         "for chi, rs in groups(rows, 'chi'):\n"
         "    ax.plot([r['N'] for r in rs], [r['fidelity'] for r in rs], 'o-',\n"
         "            label=f'chi={int(chi)}')\n"
         "ax.set_xlabel('N'); ax.set_ylabel('fidelity'); ax.legend()\n";
  } else if (c == "qaoa") {
    s << "fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))\n"
         "for chi, rs in groups(rows, 'chi'):\n"
         "    p = [r['p'] for r in rs]\n"
         "    a.errorbar(p, [r['mean_energy'] for r in rs],\n"
         "               yerr=[r['stderr_energy'] for r in rs], fmt='o-', label=f'chi={int(chi)}')\n"
         "    b.errorbar(p, [r['mean_midpoint_entropy'] for r in rs],\n"
         "               yerr=[r['stderr_entropy'] for r in rs], fmt='o-', label=f'chi={int(chi)}')\n"
         "a.set_xlabel('p'); a.set_ylabel('energy'); a.legend()\n"
         "b.set_xlabel('p'); b.set_ylabel('midpoint entropy (nats)')\n";
  } else if (c == "scaling") {
    s << "fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))\n"
         "for n, rs in groups(rows, 'N'):\n"
         "    x = [r['lnchi_over_n'] for r in rs]\n"
         "    a.plot(x, [r['s_over_n'] for r in rs], 'o-', label=f'N={int(n)}')\n"
         "    b.plot(x, [r['ratio'] for r in rs], 'o-', label=f'N={int(n)}')\n"
         "a.set_xlabel('ln(chi)/N'); a.set_ylabel('S/N'); a.legend()\n"
         "b.set_xlabel('ln(chi)/N'); b.set_ylabel('E_min/E_opt')\n";
  }
  s << "fig.tight_layout()\n"
       "out = sys.argv[1] if len(sys.argv) > 1 else DATA + '.png'\n"
       "fig.savefig(out, dpi=150)\n"
       "print(out)\n";
  return s.str();
}

}  // namespace mpsqvm::cli

// Copyright 2026 The qgas Authors
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

#include "qgas/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgas/report.hpp"

namespace qgas {

namespace {

bool read_file(const std::string& path, std::string& text, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "qgas: cannot open '" << path << "'\n";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.7f", x);
  return buf;
}

void print_summary(const RunReport& r, std::ostream& out) {
  const std::string unit = r.units.mode == HeatUnits::NkT ? " NkT" : " J";
  if (!r.run.header.name.empty()) out << "protocol " << r.run.header.name << "\n";
  for (const auto& v : r.run.views) {
    const auto& verdict = v.verdict;
    out << "observer " << v.observer.name << ": total Q = " << fixed(r.reported(v.ledger.total())) << unit
        << ", cycle claimed " << (verdict.cycle_claimed ? "yes" : "no") << ", actual "
        << (verdict.cycle_actual ? "yes" : "no") << ", second law " << to_string(verdict.second_law);
    if (verdict.apparent_violation_explained) out << " (apparent cycle only)";
    out << "\n";
  }
  for (const auto& e : r.run.expectations) {
    out << (e.passed ? "PASS" : "FAIL") << " line " << e.line << ": " << e.text << " [" << e.detail << "]\n";
  }
}

}  // namespace

const std::vector<std::string>& bundled_scenarios() {
  static const std::vector<std::string> names = {
      "example1_distinguishable", "example2_nondistinguishable", "peres_tatiana",
      "peres_willard_completed",  "jaynes_johann",               "jaynes_marie_completed",
  };
  return names;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum ideal-gas protocol runner", "qgas"};
  app.require_subcommand(1);

  std::string file;
  std::string json_path;
  std::string units = "nkt";
  double kb = 1.380649e-23;
  double particles = 0.0;
  double temperature = 0.0;

  auto* run = app.add_subcommand("run", "Execute a protocol and report heats and verdicts");
  run->add_option("file", file, "Protocol file (.qg)")->required();
  run->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");
  run->add_option("--units", units, "Heat units")->check(CLI::IsMember({"nkt", "absolute"}));
  auto* kb_opt = run->add_option("--kB", kb, "Boltzmann constant for absolute units");
  auto* n_opt = run->add_option("--N", particles, "Particle number for absolute units");
  auto* t_opt = run->add_option("--T", temperature, "Temperature for absolute units");

  std::string check_file;
  auto* check = app.add_subcommand("check", "Parse a protocol without running it");
  check->add_option("file", check_file, "Protocol file (.qg)")->required();

  auto* list = app.add_subcommand("scenarios", "List the bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (list->parsed()) {
    for (const auto& name : bundled_scenarios()) out << name << "\n";
    return kExitOk;
  }

  const std::string& path = check->parsed() ? check_file : file;
  std::string text;
  if (!read_file(path, text, err)) return kExitError;
  try {
    const Protocol p = parse(text);
    if (check->parsed()) {
      out << path << ": ok, " << p.steps.size() << " statements\n";
      return kExitOk;
    }
    ReportUnits ru;
    if (units == "absolute") {
      ru.mode = HeatUnits::Absolute;
      if (kb_opt->count() != 0) ru.boltzmann = kb;
      if (n_opt->count() != 0) ru.particles = particles;
      if (t_opt->count() != 0) ru.temperature = temperature;
    }
    const RunReport report = execute(p, ru);
    print_summary(report, out);
    if (!json_path.empty()) {
      const std::string json = to_json(report);
      if (json_path == "-") {
        out << json;
      } else {
        std::ofstream f(json_path, std::ios::binary);
        if (!(f << json)) {
          err << "qgas: cannot write '" << json_path << "'\n";
          return kExitError;
        }
      }
    }
    return report.run.expectations_passed() ? kExitOk : kExitExpectationFailed;
  } catch (const ParseError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  } catch (const StepError& e) {
    err << path << ": " << to_string(e.kind()) << " at " << e.what() << "\n";
  } catch (const Error& e) {
    err << path << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace qgas

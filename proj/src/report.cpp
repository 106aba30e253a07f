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

#include "qgas/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace qgas {

namespace {

using Json = nlohmann::ordered_json;

double rounded(double x, double quantum) {
  const double r = std::round(x / quantum) * quantum;
  return r == 0.0 ? 0.0 : r;
}

class Fnv1a {
 public:
  void add(std::int64_t v) {
    for (int k = 0; k < 8; ++k) {
      h_ ^= static_cast<std::uint64_t>(v >> (8 * k)) & 0xFFu;
      h_ *= 0x100000001b3ull;
    }
  }
  void add(const std::string& s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ull;
    }
    add(std::int64_t(s.size()));
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

std::int64_t quantized(double x) { return static_cast<std::int64_t>(std::llround(x * 1e9)); }

Json digest(const GasContents& contents) {
  Json d;
  Fnv1a hash;
  if (is_quantum(contents)) {
    const auto rho = quantum_contents(contents).assembled();
    Json values = Json::array();
    for (double v : eig_hermitian(rho.matrix()).eigenvalues) values.push_back(rounded(v, 1e-12));
    d["eigenvalues"] = values;
    const auto& m = rho.matrix().dense();
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) {
        hash.add(quantized(m(r, c).real()));
        hash.add(quantized(m(r, c).imag()));
      }
    }
  } else {
    Json species = Json::object();
    for (const auto& [name, w] : classical_contents(contents).weights()) {
      species[name] = rounded(w, 1e-12);
      hash.add(name);
      hash.add(quantized(w));
    }
    d["species"] = species;
  }
  d["hash"] = hash.hex();
  return d;
}

std::string lens_name(const Lens& lens) {
  if (std::holds_alternative<IdentityLens>(lens)) return "identity";
  if (const auto* t = std::get_if<PartialTraceLens>(&lens)) {
    return "trace " + std::to_string(t->dims.first) + "x" + std::to_string(t->dims.second) + " keep " +
           (t->keep == Factor::First ? "first" : "second");
  }
  return "rename";
}

Json verdict_json(const RunReport& r, const CycleVerdict& v) {
  return Json{{"cycle_claimed", v.cycle_claimed},
              {"cycle_actual", v.cycle_actual},
              {"total_Q", r.reported(v.total_heat)},
              {"second_law", std::string(to_string(v.second_law))},
              {"apparent_violation_explained", v.apparent_violation_explained}};
}

}  // namespace

RunReport execute(const Protocol& p, const ReportUnits& units) {
  ScenarioRun run = run_scenario(p);
  const double reference = p.header.particles * p.header.temperature;
  double scale = 1.0 / reference;
  if (units.mode == HeatUnits::Absolute) {
    const double n = units.particles.value_or(p.header.particles);
    const double t = units.temperature.value_or(p.header.temperature);
    if (!(n > 0.0) || !(t > 0.0) || !(units.boltzmann > 0.0)) {
      throw Error(ErrorKind::NonPositiveInput, "absolute units need positive kB, N and T");
    }
    scale = units.boltzmann * n * t / reference;
  }
  return RunReport{std::move(run), units, scale};
}

std::string to_json(const RunReport& r) {
  const auto& h = r.run.header;
  Json units;
  if (r.units.mode == HeatUnits::NkT) {
    units = Json{{"heat", "NkT"}};
  } else {
    units = Json{{"heat", "J"},
                 {"boltzmann", r.units.boltzmann},
                 {"particles", r.units.particles.value_or(h.particles)},
                 {"temperature", r.units.temperature.value_or(h.temperature)}};
  }
  Json observers = Json::array();
  for (const auto& v : r.run.views) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < v.steps.size(); ++k) {
      const auto& s = v.steps[k];
      Json chambers = Json::array();
      for (const auto& c : s.chambers) {
        chambers.push_back(Json{{"label", c.label()},
                                {"volume", c.volume()},
                                {"particles", c.particles()},
                                {"contents_digest", digest(c.contents())}});
      }
      steps.push_back(Json{{"index", k}, {"description", s.description}, {"Q", r.reported(s.heat)}, {"chambers", chambers}});
    }
    Json claims = Json::array();
    for (const auto& c : v.claims) claims.push_back(verdict_json(r, c));
    observers.push_back(Json{{"name", v.observer.name},
                             {"lens", lens_name(v.observer.lens)},
                             {"steps", steps},
                             {"total_Q", r.reported(v.ledger.total())},
                             {"verdict", verdict_json(r, v.verdict)},
                             {"claims", claims}});
  }
  Json expectations = Json::array();
  for (const auto& e : r.run.expectations) {
    expectations.push_back(Json{{"line", e.line}, {"text", e.text}, {"passed", e.passed}, {"detail", e.detail}});
  }
  Json out{{"schema", kReportSchema},
           {"protocol", h.name},
           {"system", h.system == SystemKind::Quantum ? "quantum" : "classical"},
           {"units", units},
           {"observers", observers},
           {"expectations", expectations}};
  return out.dump(2) + "\n";
}

}  // namespace qgas

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

#include <charconv>
#include <sstream>

#include "qgas/protocol.hpp"

namespace qgas {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

bool compound(const Expr& e) {
  return e.kind == Expr::Kind::Sum || e.kind == Expr::Kind::Product || e.kind == Expr::Kind::Negate;
}

std::string operand(const Expr& e) { return compound(e) ? "(" + render(e) + ")" : render(e); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += " " + s;
  return out;
}

std::string as_clause(const std::vector<std::string>& labels) {
  return labels.empty() ? std::string() : " AS" + join(labels);
}

std::string comparison(Comparison c) {
  switch (c) {
    case Comparison::Approx: return "~";
    case Comparison::AtMost: return "<=";
    case Comparison::AtLeast: return ">=";
  }
  return "~";
}

std::string render_lens(const Lens& lens) {
  return std::visit(Overloaded{
                        [](const IdentityLens&) { return std::string("identity"); },
                        [](const PartialTraceLens& l) {
                          return "trace " + std::to_string(l.dims.first) + " " + std::to_string(l.dims.second) +
                                 " keep " + (l.keep == Factor::First ? "first" : "second");
                        },
                        [](const SpeciesLens& l) {
                          std::string out = "rename";
                          for (const auto& [from, to] : l.rename) out += " " + from + "=" + to;
                          return out;
                        },
                    },
                    lens);
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      // Literals are either real or imaginary; mixed values come from sums.
      if (e.number.imag() != 0.0 && e.number.real() == 0.0) return format_number(e.number.imag()) + "i";
      if (e.number.imag() == 0.0) return format_number(e.number.real());
      return "(" + format_number(e.number.real()) + " + " + format_number(e.number.imag()) + "i)";
    }
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Call: {
      std::string out = e.name + "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) out += (k ? ", " : "") + render(e.args[k]);
      return out + ")";
    }
    case Expr::Kind::Negate: return "-" + operand(e.args[0]);
    case Expr::Kind::Sum: return operand(e.args[0]) + " + " + operand(e.args[1]);
    case Expr::Kind::Product: return operand(e.args[0]) + "*" + operand(e.args[1]);
  }
  return {};
}

std::string render(const Statement& s) {
  return std::visit(
      Overloaded{
          [](const DefineState& d) { return "DEFINE_STATE " + d.name + " = " + render(d.value); },
          [](const DefineInstrument& d) {
            return "DEFINE_INSTRUMENT " + d.name + " = " + render(d.value) +
                   (d.labels.empty() ? std::string() : " LABELS" + join(d.labels));
          },
          [](const DefineUnitary& d) { return "DEFINE_UNITARY " + d.name + " = " + render(d.value); },
          [](const DefinePermeability& d) {
            std::string out = "DEFINE_PERMEABILITY " + d.name + " =";
            for (const auto& [species, p] : d.rules) out += " " + species + ":" + std::string(to_string(p));
            return out;
          },
          [](const AddChamber& c) {
            return "CHAMBER " + c.label + " " + format_number(c.fraction) + " " + render(c.contents);
          },
          [](const Separate& s) { return "SEPARATE " + s.chamber + " " + s.device + as_clause(s.labels); },
          [](const Mix& m) {
            std::string out = m.remove_partition ? "REMOVE_PARTITION" : m.distinguishing ? "MIX distinguishing" : "MIX free";
            out += join(m.chambers);
            if (!m.label.empty()) out += " AS " + m.label;
            return out;
          },
          [](const Partition& p) {
            std::string out = "PARTITION" + join(p.chambers);
            for (double f : p.fractions) out += " " + format_number(f);
            return out + as_clause(p.labels);
          },
          [](const Rotate& r) {
            std::string out = "ROTATE";
            for (const auto& [chamber, u] : r.targets) out += " " + chamber + " " + render(u);
            return out;
          },
          [](const ClaimCycle&) { return std::string("CLAIM_CYCLE"); },
          [](const ExpectValue& e) {
            std::string out = "EXPECT ";
            switch (e.quantity) {
              case Quantity::TotalHeat: out += "Q_total"; break;
              case Quantity::StepHeat: out += "Q_step"; break;
              case Quantity::Volume: out += "volume " + e.chamber; break;
            }
            return out + " " + comparison(e.comparison) + " " + format_number(e.value) + " " +
                   format_number(e.tolerance);
          },
          [](const ExpectChamberCount& e) { return "EXPECT chamber_count " + std::to_string(e.count); },
          [](const ExpectVerdict& e) { return "EXPECT verdict " + e.observer + " " + std::string(to_string(e.verdict)); },
          [](const ExpectCycle& e) {
            return "EXPECT cycle " + e.observer + " " + (e.actual ? "actual" : "not_actual");
          },
          [](const ExpectContents& e) {
            return "EXPECT contents " + e.observer + " " + e.chamber + " " + render(e.state);
          },
      },
      s);
}

std::string render(const Protocol& p) {
  std::ostringstream out;
  const auto& h = p.header;
  if (!h.name.empty()) out << "PROTOCOL " << h.name << "\n";
  if (h.system == SystemKind::Quantum) {
    out << "SYSTEM quantum " << h.dim << "\n";
  } else {
    out << "SYSTEM classical\n";
  }
  out << "TEMPERATURE " << format_number(h.temperature) << "\n";
  out << "PARTICLES " << format_number(h.particles) << "\n";
  out << "VOLUME " << format_number(h.volume) << "\n";
  for (const auto& o : h.observers) out << "OBSERVER " << o.name << " " << render_lens(o.lens) << "\n";
  for (const auto& s : p.steps) out << render(s.body) << "\n";
  return out.str();
}

}  // namespace qgas

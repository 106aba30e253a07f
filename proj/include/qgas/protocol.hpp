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

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qgas/diaphragm.hpp"
#include "qgas/observers.hpp"

namespace qgas {

// Expression tree for state, instrument and unitary constructors.  Source
// positions are kept for diagnostics and ignored by ==.
struct Expr {
  enum class Kind { Number, Name, Call, Negate, Sum, Product };

  Kind kind = Kind::Number;
  std::complex<double> number;
  std::string name;        // Name, or the function of a Call
  std::vector<Expr> args;  // Call arguments or operands
  int line = 0;
  int column = 0;

  static Expr make_number(std::complex<double> v) { return Expr{Kind::Number, v, {}, {}}; }
  static Expr make_name(std::string n) { return Expr{Kind::Name, {}, std::move(n), {}}; }
  static Expr make_call(std::string f, std::vector<Expr> a) { return Expr{Kind::Call, {}, std::move(f), std::move(a)}; }

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.number == b.number && a.name == b.name && a.args == b.args;
  }
};

enum class SystemKind { Quantum, Classical };

struct Header {
  std::string name;
  SystemKind system = SystemKind::Quantum;
  Index dim = 0;  // quantum only
  double temperature = 1.0;
  double particles = 1.0;
  double volume = 1.0;
  std::vector<Observer> observers;  // empty means one identity observer "truth"
  friend bool operator==(const Header&, const Header&) = default;
};

struct DefineState {
  std::string name;
  Expr value;
  friend bool operator==(const DefineState&, const DefineState&) = default;
};

struct DefineInstrument {
  std::string name;
  Expr value;
  std::vector<std::string> labels;  // empty keeps the constructor's labels
  friend bool operator==(const DefineInstrument&, const DefineInstrument&) = default;
};

struct DefineUnitary {
  std::string name;
  Expr value;
  friend bool operator==(const DefineUnitary&, const DefineUnitary&) = default;
};

struct DefinePermeability {
  std::string name;
  Permeability rules;
  friend bool operator==(const DefinePermeability&, const DefinePermeability&) = default;
};

struct AddChamber {
  std::string label;
  double fraction;  // of the header volume and particle amount
  Expr contents;
  friend bool operator==(const AddChamber&, const AddChamber&) = default;
};

struct Separate {
  std::string chamber;
  std::string device;  // instrument or permeability
  std::vector<std::string> labels;
  friend bool operator==(const Separate&, const Separate&) = default;
};

struct Mix {
  bool distinguishing = false;
  bool remove_partition = false;  // spelled REMOVE_PARTITION
  std::vector<std::string> chambers;  // empty means all
  std::string label;
  friend bool operator==(const Mix&, const Mix&) = default;
};

// Several chambers are first merged freely, then walls go in.
struct Partition {
  std::vector<std::string> chambers;
  std::vector<double> fractions;
  std::vector<std::string> labels;
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Rotate {
  std::vector<std::pair<std::string, Expr>> targets;
  friend bool operator==(const Rotate&, const Rotate&) = default;
};

struct ClaimCycle {
  friend bool operator==(const ClaimCycle&, const ClaimCycle&) = default;
};

enum class Comparison { Approx, AtMost, AtLeast };
enum class Quantity { TotalHeat, StepHeat, Volume };

inline constexpr double kDefaultExpectTolerance = 1e-4;

struct ExpectValue {
  Quantity quantity;
  std::string chamber;  // Volume only
  Comparison comparison;
  double value;
  double tolerance = kDefaultExpectTolerance;
  friend bool operator==(const ExpectValue&, const ExpectValue&) = default;
};

struct ExpectChamberCount {
  long count;
  friend bool operator==(const ExpectChamberCount&, const ExpectChamberCount&) = default;
};

struct ExpectVerdict {
  std::string observer;
  SecondLaw verdict;
  friend bool operator==(const ExpectVerdict&, const ExpectVerdict&) = default;
};

struct ExpectCycle {
  std::string observer;
  bool actual;
  friend bool operator==(const ExpectCycle&, const ExpectCycle&) = default;
};

struct ExpectContents {
  std::string observer;
  std::string chamber;
  Expr state;
  friend bool operator==(const ExpectContents&, const ExpectContents&) = default;
};

using Statement = std::variant<DefineState, DefineInstrument, DefineUnitary, DefinePermeability, AddChamber, Separate,
                               Mix, Partition, Rotate, ClaimCycle, ExpectValue, ExpectChamberCount, ExpectVerdict,
                               ExpectCycle, ExpectContents>;

struct Step {
  int line = 0;
  Statement body;
  friend bool operator==(const Step& a, const Step& b) { return a.body == b.body; }
};

struct Protocol {
  Header header;
  std::vector<Step> steps;
  friend bool operator==(const Protocol&, const Protocol&) = default;
};

// Throws ParseError (SyntaxError, UndefinedName, DuplicateName, HeaderMissing).
Protocol parse(std::string_view text);

std::string render(const Expr& e);
std::string render(const Statement& s);
std::string render(const Protocol& p);

// Number formatting shared by render and diagnostics; round-trips exactly.
std::string format_number(double x);

}  // namespace qgas

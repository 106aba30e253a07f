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

#include "qgas/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace qgas {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

using Complex = std::complex<double>;
using Instrument = ProjectiveInstrument<double>;

struct StateValue {
  DensityMatrix<double> rho;
  std::optional<StateVector<double>> ket;
};

struct IdentityValue {
  Index dim;
};

using Value = std::variant<Complex, StateValue, Instrument, Unitary<double>, IdentityValue, Permeability>;

[[noreturn]] void runtime(const std::string& message) { throw Error(ErrorKind::Runtime, message); }

class Interpreter {
 public:
  Interpreter(const Protocol& p, std::vector<Observer> observers) : p_(p), observers_(std::move(observers)) {
    run_.header = p.header;
    run_.header.observers = observers_;
    const bool quantum = p.header.system == SystemKind::Quantum;
    std::set<std::string> names;
    for (const auto& o : observers_) {
      if (!names.insert(o.name).second) throw Error(ErrorKind::DuplicateName, "observer '" + o.name + "' declared twice");
      check_compatible(o, quantum, p.header.dim);
    }
  }

  ScenarioRun run() {
    for (const auto& step : p_.steps) {
      try {
        execute(step);
      } catch (const StepError&) {
        throw;
      } catch (const Error& e) {
        throw StepError(e.kind(), step.line, e.what());
      } catch (const std::exception& e) {
        throw StepError(ErrorKind::Runtime, step.line, e.what());
      }
    }
    record_initial();
    for (const auto& o : observers_) {
      ObserverView v{o, {}, run_.ledger, claims_[o.name], {}};
      for (const auto& s : run_.truth) v.steps.push_back({s.description, s.heat, view_chambers(o, s.chambers)});
      v.verdict = latest_verdict(o);
      run_.views.push_back(std::move(v));
    }
    return std::move(run_);
  }

 private:
  // --- expression evaluation ----------------------------------------------
  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number: return e.number;
      case Expr::Kind::Name: {
        auto it = env_.find(e.name);
        if (it == env_.end()) throw Error(ErrorKind::UndefinedName, "'" + e.name + "' is not defined");
        return it->second;
      }
      case Expr::Kind::Negate: return -number(e.args[0]);
      case Expr::Kind::Sum: return number(e.args[0]) + number(e.args[1]);
      case Expr::Kind::Product: return number(e.args[0]) * number(e.args[1]);
      case Expr::Kind::Call: return call(e);
    }
    runtime("bad expression");
  }

  Complex number(const Expr& e) {
    const Value v = eval(e);
    if (const auto* c = std::get_if<Complex>(&v)) return *c;
    runtime("'" + render(e) + "' is not a number; weighted sums belong inside mix()");
  }

  double real_number(const Expr& e) {
    const Complex c = number(e);
    if (c.imag() != 0.0) runtime("'" + render(e) + "' must be real");
    return c.real();
  }

  Index index_number(const Expr& e) {
    const double v = real_number(e);
    if (v < 0.0 || v != std::floor(v)) runtime("'" + render(e) + "' must be a non-negative integer");
    return static_cast<Index>(v);
  }

  StateValue state(const Expr& e) {
    Value v = eval(e);
    if (auto* s = std::get_if<StateValue>(&v)) return std::move(*s);
    runtime("'" + render(e) + "' is not a state");
  }

  StateVector<double> ket_of(const StateValue& s, const Expr& e) {
    if (s.ket) return *s.ket;
    const auto spec = eig_hermitian(s.rho.matrix());
    if (std::abs(spec.eigenvalues.front() - 1.0) > tol::kDerived) runtime("'" + render(e) + "' is not a pure state");
    return spec.eigenvectors.front();
  }

  Unitary<double> unitary(const Value& v, const Expr& e) {
    if (const auto* u = std::get_if<Unitary<double>>(&v)) return *u;
    if (const auto* id = std::get_if<IdentityValue>(&v)) return Unitary<double>::identity(id->dim);
    runtime("'" + render(e) + "' is not a unitary");
  }

  // Flattens w1*s1 + w2*s2 + ... into (weight, operand) pairs.
  void terms(const Expr& e, double scale, std::vector<std::pair<double, const Expr*>>& out) {
    if (e.kind == Expr::Kind::Sum) {
      terms(e.args[0], scale, out);
      terms(e.args[1], scale, out);
    } else if (e.kind == Expr::Kind::Product) {
      const bool left_numeric = e.args[0].kind == Expr::Kind::Number || e.args[0].kind == Expr::Kind::Negate;
      const Expr& w = left_numeric ? e.args[0] : e.args[1];
      const Expr& s = left_numeric ? e.args[1] : e.args[0];
      terms(s, scale * real_number(w), out);
    } else {
      out.emplace_back(scale, &e);
    }
  }

  Value call(const Expr& e) {
    const auto& f = e.name;
    const auto& a = e.args;
    if (f == "ket") {
      DenseVector<double> v(Index(a.size()));
      for (std::size_t k = 0; k < a.size(); ++k) v(Index(k)) = number(a[k]);
      auto ket = StateVector<double>::normalized(v);
      return StateValue{DensityMatrix<double>::pure(ket), ket};
    }
    if (f == "proj") {
      auto s = state(a[0]);
      const auto ket = ket_of(s, a[0]);
      return StateValue{DensityMatrix<double>::pure(ket), ket};
    }
    if (f == "mix") {
      std::vector<std::pair<double, const Expr*>> parts;
      terms(a[0], 1.0, parts);
      std::vector<double> weights;
      std::vector<DensityMatrix<double>> states;
      for (const auto& [w, s] : parts) {
        weights.push_back(w);
        states.push_back(state(*s).rho);
      }
      return StateValue{mixture(weights, states), std::nullopt};
    }
    if (f == "eigvec") {
      const auto s = state(a[0]);
      const Index k = index_number(a[1]);
      if (k >= s.rho.dim()) runtime("eigvec index " + std::to_string(k) + " out of range");
      const auto ket = eig_hermitian(s.rho.matrix()).eigenvectors[std::size_t(k)];
      return StateValue{DensityMatrix<double>::pure(ket), ket};
    }
    if (f == "identity") {
      const Index n = index_number(a[0]);
      if (n < 1) runtime("identity needs a dimension >= 1");
      return IdentityValue{n};
    }
    if (f == "projectors") {
      std::vector<LabeledOperator<double>> ops;
      for (std::size_t k = 0; k < a.size(); ++k) ops.push_back({std::to_string(k), state(a[k]).rho.matrix()});
      return Instrument::from(std::move(ops));
    }
    if (f == "eigenbasis") return eigenbasis_instrument(state(a[0]).rho).instrument;
    if (f == "rotate_to") {
      const auto from = state(a[0]);
      const auto to = state(a[1]);
      return rotate_to(ket_of(from, a[0]), ket_of(to, a[1]));
    }
    if (f == "tensor") return tensor_call(e);
    runtime("unknown function '" + f + "'");
  }

  Value tensor_call(const Expr& e) {
    const Value x = eval(e.args[0]);
    const Value y = eval(e.args[1]);
    if (const auto* sx = std::get_if<StateValue>(&x)) {
      const auto* sy = std::get_if<StateValue>(&y);
      if (!sy) runtime("tensor of a state needs another state");
      std::optional<StateVector<double>> ket;
      if (sx->ket && sy->ket) ket = tensor(*sx->ket, *sy->ket);
      return StateValue{DensityMatrix<double>::from(tensor(sx->rho.matrix(), sy->rho.matrix())), ket};
    }
    const auto* ix = std::get_if<Instrument>(&x);
    const auto* iy = std::get_if<Instrument>(&y);
    const auto* idx = std::get_if<IdentityValue>(&x);
    const auto* idy = std::get_if<IdentityValue>(&y);
    if (ix && idy) return extend_with_identity(*ix, idy->dim, Factor::First);
    if (idx && iy) return extend_with_identity(*iy, idx->dim, Factor::Second);
    if (ix && iy) {
      std::vector<LabeledOperator<double>> ops;
      for (const auto& p : ix->projectors())
        for (const auto& q : iy->projectors()) ops.push_back({p.label + "_" + q.label, tensor(p.matrix, q.matrix)});
      return Instrument::from(std::move(ops));
    }
    if (idx && idy) return IdentityValue{idx->dim * idy->dim};
    return tensor(unitary(x, e.args[0]), unitary(y, e.args[1]));
  }

  std::map<std::string, double> species(const Expr& e) {
    std::map<std::string, double> out;
    const Expr& body = e.kind == Expr::Kind::Call && e.name == "mix" ? e.args[0] : e;
    std::vector<std::pair<double, const Expr*>> parts;
    terms(body, 1.0, parts);
    for (const auto& [w, s] : parts) {
      if (s->kind != Expr::Kind::Name) runtime("'" + render(*s) + "' is not a species name");
      out[s->name] += w;
    }
    return out;
  }

  GasContents contents(const Expr& e) {
    if (p_.header.system == SystemKind::Classical) return SpeciesBag::from(species(e));
    auto s = state(e);
    if (s.rho.dim() != p_.header.dim) {
      throw Error(ErrorKind::DimMismatch, "state '" + render(e) + "' has dim " + std::to_string(s.rho.dim()) +
                                              ", system has dim " + std::to_string(p_.header.dim));
    }
    return QuantumMixture::single(std::move(s.rho));
  }

  // --- chambers ------------------------------------------------------------
  std::size_t position(const std::string& label) const {
    for (std::size_t k = 0; k < chambers_.size(); ++k)
      if (chambers_[k].label() == label) return k;
    throw Error(ErrorKind::UndefinedName, "no chamber '" + label + "'");
  }

  void check_unique_labels() const {
    std::set<std::string> seen;
    for (const auto& c : chambers_) {
      if (!seen.insert(c.label()).second) throw Error(ErrorKind::DuplicateName, "two chambers labelled '" + c.label() + "'");
    }
  }

  // Removes the listed chambers (all when empty) and returns them with the
  // earliest vacated position.
  std::pair<std::vector<GasChamber>, std::size_t> take(const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx;
    if (labels.empty()) {
      for (std::size_t k = 0; k < chambers_.size(); ++k) idx.push_back(k);
    } else {
      std::set<std::string> seen;
      for (const auto& l : labels) {
        if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateName, "chamber '" + l + "' listed twice");
        idx.push_back(position(l));
      }
    }
    if (idx.empty()) runtime("there are no chambers");
    std::vector<GasChamber> picked;
    for (std::size_t k : idx) picked.push_back(chambers_[k]);
    const std::size_t at = *std::min_element(idx.begin(), idx.end());
    std::sort(idx.rbegin(), idx.rend());
    for (std::size_t k : idx) chambers_.erase(chambers_.begin() + std::ptrdiff_t(k));
    return {std::move(picked), at};
  }

  void insert_at(std::size_t at, std::vector<GasChamber> cs) {
    chambers_.insert(chambers_.begin() + std::ptrdiff_t(at), std::make_move_iterator(cs.begin()),
                     std::make_move_iterator(cs.end()));
    check_unique_labels();
  }

  // --- bookkeeping ---------------------------------------------------------
  void record_initial() {
    if (initial_) return;
    initial_ = chambers_;
    run_.truth.push_back({"initial", 0.0, chambers_});
  }

  void record_step(const Statement& s, double heat) {
    const std::string description = render(s);
    run_.ledger.record(description, heat);
    last_heat_ = heat;
    run_.truth.push_back({description, heat, chambers_});
  }

  CycleVerdict audit_for(const Observer& o, bool claimed) {
    return audit_cycle(run_.ledger, view_chambers(o, *initial_), view_chambers(o, chambers_), claimed,
                       run_.reference_heat());
  }

  CycleVerdict latest_verdict(const Observer& o) {
    const auto& c = claims_[o.name];
    return c.empty() ? audit_for(o, false) : c.back();
  }

  const Observer& observer(const std::string& name) const {
    for (const auto& o : observers_)
      if (o.name == name) return o;
    throw Error(ErrorKind::UndefinedName, "observer '" + name + "' is not declared");
  }

  // --- statements ------------------------------------------------------------
  void execute(const Step& step) {
    const auto& body = step.body;
    const bool is_process = std::holds_alternative<Separate>(body) || std::holds_alternative<Mix>(body) ||
                            std::holds_alternative<Partition>(body) || std::holds_alternative<Rotate>(body) ||
                            std::holds_alternative<ClaimCycle>(body);
    if (is_process) record_initial();
    std::visit(Overloaded{
                   [&](const DefineState& d) { env_.insert_or_assign(d.name, Value(state(d.value))); },
                   [&](const DefineUnitary& d) {
                     env_.insert_or_assign(d.name, Value(unitary(eval(d.value), d.value)));
                   },
                   [&](const DefineInstrument& d) { define_instrument(d); },
                   [&](const DefinePermeability& d) { env_.insert_or_assign(d.name, Value(d.rules)); },
                   [&](const AddChamber& c) { add_chamber(c); },
                   [&](const Separate& s) { separate_step(s); },
                   [&](const Mix& m) { mix_step(m); },
                   [&](const Partition& p) { partition_step(p); },
                   [&](const Rotate& r) { rotate_step(r); },
                   [&](const ClaimCycle&) {
                     for (const auto& o : observers_) claims_[o.name].push_back(audit_for(o, true));
                   },
                   [&](const ExpectValue& e) { expect_value(step.line, e); },
                   [&](const ExpectChamberCount& e) {
                     const long n = long(chambers_.size());
                     expectation(step.line, body, n == e.count, "chamber count " + std::to_string(n));
                   },
                   [&](const ExpectVerdict& e) {
                     if (!initial_) runtime("no process step has run yet");
                     const auto v = latest_verdict(observer(e.observer));
                     expectation(step.line, body, v.second_law == e.verdict,
                                 "verdict " + std::string(to_string(v.second_law)));
                   },
                   [&](const ExpectCycle& e) {
                     if (!initial_) runtime("no process step has run yet");
                     const auto v = latest_verdict(observer(e.observer));
                     expectation(step.line, body, v.cycle_actual == e.actual,
                                 v.cycle_actual ? "cycle actual" : "cycle not actual");
                   },
                   [&](const ExpectContents& e) { expect_contents(step.line, e); },
               },
               body);
  }

  void define_instrument(const DefineInstrument& d) {
    const Value v = eval(d.value);
    const auto* inst = std::get_if<Instrument>(&v);
    if (!inst) runtime("'" + render(d.value) + "' is not an instrument");
    if (d.labels.empty()) {
      env_.insert_or_assign(d.name, v);
      return;
    }
    if (d.labels.size() != inst->projectors().size()) {
      throw Error(ErrorKind::InvalidInstrument, "instrument has " + std::to_string(inst->projectors().size()) +
                                                    " outcomes but " + std::to_string(d.labels.size()) + " labels");
    }
    std::vector<LabeledOperator<double>> ops;
    for (std::size_t k = 0; k < d.labels.size(); ++k) ops.push_back({d.labels[k], inst->projectors()[k].matrix});
    env_.insert_or_assign(d.name, Value(Instrument::from(std::move(ops))));
  }

  void add_chamber(const AddChamber& c) {
    const auto& h = p_.header;
    chambers_.emplace_back(c.label, c.fraction * h.volume, h.temperature, c.fraction * h.particles, contents(c.contents));
    check_unique_labels();
    if (initial_) record_step(c, 0.0);
  }

  void separate_step(const Separate& s) {
    const auto& parent = chambers_[position(s.chamber)];
    auto it = env_.find(s.device);
    if (it == env_.end()) throw Error(ErrorKind::UndefinedName, "'" + s.device + "' is not defined");
    SeparationResult r = [&] {
      if (const auto* inst = std::get_if<Instrument>(&it->second)) return separate(parent, *inst);
      if (const auto* perm = std::get_if<Permeability>(&it->second)) return classical_separate(parent, *perm);
      runtime("'" + s.device + "' is not an instrument or permeability");
    }();
    if (!s.labels.empty()) {
      if (s.labels.size() != r.chambers.size()) {
        throw Error(ErrorKind::InvalidPartition, "separation produced " + std::to_string(r.chambers.size()) +
                                                     " chambers but " + std::to_string(s.labels.size()) + " labels");
      }
      for (std::size_t k = 0; k < r.chambers.size(); ++k) r.chambers[k] = r.chambers[k].relabeled(s.labels[k]);
    }
    auto [taken, at] = take({s.chamber});
    insert_at(at, std::move(r.chambers));
    record_step(s, r.heat);
  }

  void mix_step(const Mix& m) {
    auto [taken, at] = take(m.chambers);
    auto r = mix(taken, m.distinguishing, 1.0, m.label);
    insert_at(at, {r.chamber});
    record_step(m, r.heat);
  }

  void partition_step(const Partition& p) {
    auto [taken, at] = take(p.chambers);
    const GasChamber whole = mix(taken, false, 1.0).chamber;
    std::vector<std::string> labels = p.labels;
    if (labels.empty()) {
      for (std::size_t k = 0; k < p.fractions.size(); ++k) labels.push_back(whole.label() + "/" + std::to_string(k + 1));
    }
    insert_at(at, insert_partition(whole, p.fractions, labels));
    record_step(p, 0.0);
  }

  void rotate_step(const Rotate& r) {
    for (const auto& [label, expr] : r.targets) {
      const auto u = unitary(eval(expr), expr);
      auto& c = chambers_[position(label)];
      c = rotate(c, u);
    }
    record_step(r, 0.0);
  }

  void expectation(int line, const Statement& s, bool passed, std::string detail) {
    run_.expectations.push_back({line, render(s), passed, std::move(detail)});
  }

  void expect_value(int line, const ExpectValue& e) {
    double actual = 0.0;
    switch (e.quantity) {
      case Quantity::TotalHeat: actual = run_.ledger.total() / run_.reference_heat(); break;
      case Quantity::StepHeat: actual = last_heat_ / run_.reference_heat(); break;
      case Quantity::Volume: actual = chambers_[position(e.chamber)].volume(); break;
    }
    bool ok = false;
    switch (e.comparison) {
      case Comparison::Approx: ok = std::abs(actual - e.value) <= e.tolerance; break;
      case Comparison::AtMost: ok = actual <= e.value + e.tolerance; break;
      case Comparison::AtLeast: ok = actual >= e.value - e.tolerance; break;
    }
    expectation(line, e, ok, "actual " + format_number(actual));
  }

  void expect_contents(int line, const ExpectContents& e) {
    const Observer& o = observer(e.observer);
    const GasContents seen = view_contents(o, chambers_[position(e.chamber)].contents());
    GasContents expected = p_.header.system == SystemKind::Classical
                               ? GasContents(SpeciesBag::from(species(e.state)))
                               : GasContents(QuantumMixture::single(state(e.state).rho));
    bool ok = false;
    std::string detail;
    if (is_quantum(seen) && quantum_contents(seen).dim() != quantum_contents(expected).dim()) {
      detail = "observer sees dim " + std::to_string(quantum_contents(seen).dim());
    } else {
      ok = contents_equal(seen, expected);
      if (is_quantum(seen)) {
        detail = "distance " + format_number(distance(quantum_contents(seen).assembled().matrix(),
                                                      quantum_contents(expected).assembled().matrix()));
      } else {
        detail = ok ? "species match" : "species differ";
      }
    }
    expectation(line, e, ok, std::move(detail));
  }

  const Protocol& p_;
  std::vector<Observer> observers_;
  ScenarioRun run_;
  std::map<std::string, Value> env_;
  std::vector<GasChamber> chambers_;
  std::optional<std::vector<GasChamber>> initial_;
  std::map<std::string, std::vector<CycleVerdict>> claims_;
  double last_heat_ = 0.0;
};

std::vector<Observer> default_observers(const Header& h) {
  if (!h.observers.empty()) return h.observers;
  return {Observer{"truth", IdentityLens{}}};
}

}  // namespace

bool ScenarioRun::expectations_passed() const {
  return std::all_of(expectations.begin(), expectations.end(), [](const auto& e) { return e.passed; });
}

const ObserverView& ScenarioRun::view(const std::string& observer) const {
  for (const auto& v : views)
    if (v.observer.name == observer) return v;
  throw Error(ErrorKind::UndefinedName, "no observer '" + observer + "'");
}

ScenarioRun run_scenario(const Protocol& protocol) {
  return Interpreter(protocol, default_observers(protocol.header)).run();
}

ScenarioRun run_scenario(const Protocol& protocol, const std::vector<Observer>& observers) {
  return Interpreter(protocol, observers.empty() ? default_observers(protocol.header) : observers).run();
}

}  // namespace qgas

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
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "qgas/protocol.hpp"

namespace qgas {

namespace {

struct Token {
  enum class Kind { Ident, Number, Imag, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  double value = 0.0;
  int column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view line, int line_no) : s_(line), line_(line_no) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) advance(1);
      Token t;
      t.column = col_;
      if (i_ >= s_.size() || s_[i_] == '#') {
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      if (ident_start(c)) {
        std::size_t j = i_;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        t.kind = Token::Kind::Ident;
        t.text = std::string(s_.substr(i_, j - i_));
        advance(j - i_);
      } else if (digit(c) || (c == '.' && i_ + 1 < s_.size() && digit(s_[i_ + 1]))) {
        lex_number(t);
      } else if (auto p = punct()) {
        t.kind = Token::Kind::Punct;
        t.text = p->first;
        advance(p->second);
      } else {
        throw ParseError(ErrorKind::SyntaxError, line_, col_, "unexpected character '" + std::string(1, c) + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  // Advances n bytes; the column counts code points.
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i_) {
      if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) ++col_;
    }
  }

  std::optional<std::pair<std::string, std::size_t>> punct() const {
    static const std::pair<std::string_view, std::string_view> table[] = {
        {"<=", "<="}, {">=", ">="}, {"\xE2\x89\x88", "~"}, {"\xE2\x89\xA4", "<="}, {"\xE2\x89\xA5", ">="},
        {"(", "("},   {")", ")"},   {",", ","},            {"*", "*"},           {"+", "+"},
        {"-", "-"},   {"=", "="},   {":", ":"},            {"~", "~"},
    };
    for (const auto& [src, canon] : table) {
      if (s_.substr(i_, src.size()) == src) return std::make_pair(std::string(canon), src.size());
    }
    return std::nullopt;
  }

  void lex_number(Token& t) {
    std::size_t j = i_;
    while (j < s_.size() && digit(s_[j])) ++j;
    if (j < s_.size() && s_[j] == '.') {
      ++j;
      while (j < s_.size() && digit(s_[j])) ++j;
    }
    if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && digit(s_[k])) {
        j = k;
        while (j < s_.size() && digit(s_[j])) ++j;
      }
    }
    const std::string text(s_.substr(i_, j - i_));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw ParseError(ErrorKind::SyntaxError, line_, col_, "a finite number");
    }
    t.kind = Token::Kind::Number;
    t.value = v;
    t.text = text;
    if (j < s_.size() && s_[j] == 'i' && (j + 1 >= s_.size() || !ident_char(s_[j + 1]))) {
      t.kind = Token::Kind::Imag;
      ++j;
    }
    advance(j - i_);
  }

  std::string_view s_;
  int line_;
  std::size_t i_ = 0;
  int col_ = 1;
};

enum class Symbol { State, Instrument, Unitary, Permeability };

struct FunctionSpec {
  std::size_t min_args;
  std::size_t max_args;
};

const std::map<std::string, FunctionSpec>& functions() {
  static const std::map<std::string, FunctionSpec> table = {
      {"ket", {1, 64}},       {"proj", {1, 1}},       {"mix", {1, 1}},     {"tensor", {2, 2}},   {"eigvec", {2, 2}},
      {"projectors", {1, 64}}, {"eigenbasis", {1, 1}}, {"identity", {1, 1}}, {"rotate_to", {2, 2}},
  };
  return table;
}

const std::set<std::string>& header_keywords() {
  static const std::set<std::string> k = {"PROTOCOL", "SYSTEM", "TEMPERATURE", "PARTICLES", "VOLUME", "OBSERVER"};
  return k;
}

class Parser {
 public:
  Protocol run(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      if (end == text.size()) break;
      start = end + 1;
    }
    if (!have_system_) throw ParseError(ErrorKind::HeaderMissing, 1, 1, "a SYSTEM line");
    return std::move(p_);
  }

 private:
  // --- token access -------------------------------------------------------
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(ErrorKind::SyntaxError, line_, peek().column, expected);
  }
  [[noreturn]] void fail_at(ErrorKind kind, int column, const std::string& what) const {
    throw ParseError(kind, line_, column, what);
  }

  bool is_punct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("'") + p + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail(what);
    return next().text;
  }
  void expect_end() {
    if (!at_end()) fail("end of line");
  }
  double expect_number(const std::string& what) {
    bool negative = false;
    if (is_punct("-")) {
      negative = true;
      next();
    }
    if (peek().kind != Token::Kind::Number) fail(what);
    const double v = next().value;
    return negative ? -v : v;
  }
  double expect_positive(const std::string& what) {
    const int column = peek().column;
    const double v = expect_number(what);
    if (!(v > 0.0)) fail_at(ErrorKind::SyntaxError, column, what);
    return v;
  }
  long expect_count(const std::string& what) {
    const int column = peek().column;
    const double v = expect_number(what);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) fail_at(ErrorKind::SyntaxError, column, what);
    return static_cast<long>(v);
  }
  std::vector<std::string> labels_after_as() {
    std::vector<std::string> labels;
    if (is_word("AS")) {
      next();
      while (!at_end()) labels.push_back(expect_ident("a label"));
      if (labels.empty()) fail("at least one label after AS");
    }
    return labels;
  }

  // --- names --------------------------------------------------------------
  void define(const std::string& name, Symbol kind, int column) {
    if (functions().count(name) != 0) fail_at(ErrorKind::DuplicateName, column, "'" + name + "' is a builtin");
    if (!symbols_.emplace(name, kind).second) fail_at(ErrorKind::DuplicateName, column, "'" + name + "' is already defined");
  }
  void require_symbol(const std::string& name, int column, std::optional<Symbol> kind = std::nullopt) {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) fail_at(ErrorKind::UndefinedName, column, "'" + name + "' is not defined");
    if (kind && it->second != *kind) fail_at(ErrorKind::SyntaxError, column, "'" + name + "' has the wrong kind");
  }
  void require_observer(const std::string& name, int column) {
    if (observers_.count(name) == 0 && !(p_.header.observers.empty() && name == "truth")) {
      fail_at(ErrorKind::UndefinedName, column, "observer '" + name + "' is not declared");
    }
  }

  // --- expressions --------------------------------------------------------
  Expr expression(bool species_names) {
    Expr lhs = term(species_names);
    while (is_punct("+") || is_punct("-")) {
      const bool minus = next().text == "-";
      Expr rhs = term(species_names);
      if (minus) rhs = Expr{Expr::Kind::Negate, {}, {}, {std::move(rhs)}, rhs.line, rhs.column};
      lhs = Expr{Expr::Kind::Sum, {}, {}, {std::move(lhs), std::move(rhs)}, lhs.line, lhs.column};
    }
    return lhs;
  }
  Expr term(bool species_names) {
    Expr lhs = unary(species_names);
    while (is_punct("*")) {
      next();
      Expr rhs = unary(species_names);
      lhs = Expr{Expr::Kind::Product, {}, {}, {std::move(lhs), std::move(rhs)}, lhs.line, lhs.column};
    }
    return lhs;
  }
  Expr unary(bool species_names) {
    if (is_punct("-")) {
      const int column = next().column;
      return Expr{Expr::Kind::Negate, {}, {}, {unary(species_names)}, line_, column};
    }
    return primary(species_names);
  }
  Expr primary(bool species_names) {
    const Token& t = peek();
    const int column = t.column;
    if (t.kind == Token::Kind::Number || t.kind == Token::Kind::Imag) {
      const bool imag = t.kind == Token::Kind::Imag;
      const double v = next().value;
      Expr e = Expr::make_number(imag ? std::complex<double>(0.0, v) : std::complex<double>(v, 0.0));
      e.line = line_;
      e.column = column;
      return e;
    }
    if (is_punct("(")) {
      next();
      Expr inner = expression(species_names);
      expect_punct(")");
      return inner;
    }
    if (t.kind != Token::Kind::Ident) fail("a number, name or call");
    const std::string name = next().text;
    if (is_punct("(")) {
      next();
      auto fn = functions().find(name);
      if (fn == functions().end()) fail_at(ErrorKind::UndefinedName, column, "unknown function '" + name + "'");
      std::vector<Expr> args;
      if (!is_punct(")")) {
        args.push_back(expression(species_names));
        while (is_punct(",")) {
          next();
          args.push_back(expression(species_names));
        }
      }
      expect_punct(")");
      if (args.size() < fn->second.min_args || args.size() > fn->second.max_args) {
        const auto& spec = fn->second;
        fail_at(ErrorKind::SyntaxError, column,
                name + " takes " +
                    (spec.min_args == spec.max_args ? std::to_string(spec.min_args)
                                                    : "at least " + std::to_string(spec.min_args)) +
                    " argument(s)");
      }
      Expr e = Expr::make_call(name, std::move(args));
      e.line = line_;
      e.column = column;
      return e;
    }
    if (name == "i") {
      Expr e = Expr::make_number({0.0, 1.0});
      e.line = line_;
      e.column = column;
      return e;
    }
    if (!species_names) require_symbol(name, column);
    Expr e = Expr::make_name(name);
    e.line = line_;
    e.column = column;
    return e;
  }

  // --- lines --------------------------------------------------------------
  void parse_line(std::string_view text, int line_no) {
    line_ = line_no;
    toks_ = Lexer(text, line_no).run();
    pos_ = 0;
    if (at_end()) return;
    const int column = peek().column;
    const std::string kw = expect_ident("a keyword");
    if (header_keywords().count(kw) != 0) {
      if (!p_.steps.empty()) fail_at(ErrorKind::SyntaxError, column, "header lines before the first statement");
      parse_header(kw, column);
    } else {
      if (!have_system_) fail_at(ErrorKind::HeaderMissing, column, "a SYSTEM line before statements");
      Step step{line_, parse_statement(kw, column)};
      p_.steps.push_back(std::move(step));
    }
    expect_end();
  }

  void once(const std::string& kw, int column) {
    if (!seen_header_.insert(kw).second) fail_at(ErrorKind::DuplicateName, column, kw + " appears twice");
  }

  void parse_header(const std::string& kw, int column) {
    auto& h = p_.header;
    if (kw == "PROTOCOL") {
      once(kw, column);
      h.name = expect_ident("a protocol name");
    } else if (kw == "SYSTEM") {
      once(kw, column);
      const std::string kind = expect_ident("'quantum' or 'classical'");
      if (kind == "quantum") {
        h.system = SystemKind::Quantum;
        h.dim = expect_count("a dimension >= 1");
        if (h.dim < 1) fail("a dimension >= 1");
      } else if (kind == "classical") {
        h.system = SystemKind::Classical;
        h.dim = 0;
      } else {
        fail_at(ErrorKind::SyntaxError, column, "'quantum' or 'classical'");
      }
      have_system_ = true;
    } else if (kw == "TEMPERATURE") {
      once(kw, column);
      h.temperature = expect_positive("a positive temperature");
    } else if (kw == "PARTICLES") {
      once(kw, column);
      h.particles = expect_positive("a positive particle amount");
    } else if (kw == "VOLUME") {
      once(kw, column);
      h.volume = expect_positive("a positive volume");
    } else {
      parse_observer();
    }
  }

  void parse_observer() {
    const int column = peek().column;
    Observer obs;
    obs.name = expect_ident("an observer name");
    if (!observers_.insert(obs.name).second) {
      fail_at(ErrorKind::DuplicateName, column, "observer '" + obs.name + "' is already declared");
    }
    const std::string mode = expect_ident("'identity', 'trace' or 'rename'");
    if (mode == "identity") {
      obs.lens = IdentityLens{};
    } else if (mode == "trace") {
      PartialTraceLens l;
      l.dims.first = expect_count("a factor dimension");
      l.dims.second = expect_count("a factor dimension");
      if (expect_ident("'keep'") != "keep") fail("'keep'");
      const std::string which = expect_ident("'first' or 'second'");
      if (which != "first" && which != "second") fail("'first' or 'second'");
      l.keep = which == "first" ? Factor::First : Factor::Second;
      obs.lens = l;
    } else if (mode == "rename") {
      SpeciesLens l;
      while (!at_end()) {
        const std::string from = expect_ident("a species name");
        expect_punct("=");
        const int c = peek().column;
        if (!l.rename.emplace(from, expect_ident("a species name")).second) {
          fail_at(ErrorKind::DuplicateName, c, "species '" + from + "' renamed twice");
        }
      }
      if (l.rename.empty()) fail("at least one rename a=b");
      obs.lens = std::move(l);
    } else {
      fail("'identity', 'trace' or 'rename'");
    }
    p_.header.observers.push_back(std::move(obs));
  }

  Statement parse_statement(const std::string& kw, int column) {
    const bool classical = p_.header.system == SystemKind::Classical;
    if (kw == "DEFINE_STATE" || kw == "DEFINE_INSTRUMENT" || kw == "DEFINE_UNITARY") {
      const int name_col = peek().column;
      const std::string name = expect_ident("a name");
      expect_punct("=");
      Expr value = expression(false);
      if (kw == "DEFINE_STATE") {
        define(name, Symbol::State, name_col);
        return DefineState{name, std::move(value)};
      }
      if (kw == "DEFINE_UNITARY") {
        define(name, Symbol::Unitary, name_col);
        return DefineUnitary{name, std::move(value)};
      }
      std::vector<std::string> labels;
      if (is_word("LABELS")) {
        next();
        std::set<std::string> seen;
        while (!at_end()) {
          const int c = peek().column;
          labels.push_back(expect_ident("a label"));
          if (!seen.insert(labels.back()).second) fail_at(ErrorKind::DuplicateName, c, "label repeated");
        }
        if (labels.empty()) fail("at least one label after LABELS");
      }
      define(name, Symbol::Instrument, name_col);
      return DefineInstrument{name, std::move(value), std::move(labels)};
    }
    if (kw == "DEFINE_PERMEABILITY") {
      const int name_col = peek().column;
      const std::string name = expect_ident("a name");
      expect_punct("=");
      DefinePermeability d{name, {}};
      while (!at_end()) {
        const int c = peek().column;
        const std::string species = expect_ident("a species name");
        expect_punct(":");
        const std::string how = expect_ident("'transmitted' or 'reflected'");
        if (how != "transmitted" && how != "reflected") fail_at(ErrorKind::SyntaxError, c, "'transmitted' or 'reflected'");
        if (!d.rules.emplace(species, how == "transmitted" ? Permeation::Transmitted : Permeation::Reflected).second) {
          fail_at(ErrorKind::DuplicateName, c, "species '" + species + "' listed twice");
        }
      }
      if (d.rules.empty()) fail("species:transmitted|reflected");
      define(name, Symbol::Permeability, name_col);
      return d;
    }
    if (kw == "CHAMBER") {
      const std::string label = expect_ident("a chamber label");
      const double fraction = expect_positive("a positive volume fraction");
      return AddChamber{label, fraction, expression(classical)};
    }
    if (kw == "SEPARATE") {
      Separate s;
      s.chamber = expect_ident("a chamber label");
      const int c = peek().column;
      s.device = expect_ident("an instrument or permeability");
      require_symbol(s.device, c, classical ? Symbol::Permeability : Symbol::Instrument);
      s.labels = labels_after_as();
      return s;
    }
    if (kw == "MIX" || kw == "REMOVE_PARTITION") {
      Mix m;
      if (kw == "MIX") {
        const std::string how = expect_ident("'distinguishing' or 'free'");
        if (how != "distinguishing" && how != "free") fail_at(ErrorKind::SyntaxError, column, "'distinguishing' or 'free'");
        m.distinguishing = how == "distinguishing";
      } else {
        m.remove_partition = true;
      }
      while (!at_end() && !is_word("AS")) m.chambers.push_back(expect_ident("a chamber label"));
      const auto labels = labels_after_as();
      if (labels.size() > 1) fail("a single label after AS");
      if (!labels.empty()) m.label = labels.front();
      return m;
    }
    if (kw == "PARTITION") {
      Partition p;
      while (peek().kind == Token::Kind::Ident && !is_word("AS")) p.chambers.push_back(next().text);
      if (p.chambers.empty()) fail("a chamber label");
      while (!at_end() && !is_word("AS")) p.fractions.push_back(expect_positive("a positive volume fraction"));
      if (p.fractions.empty()) fail("volume fractions");
      p.labels = labels_after_as();
      if (!p.labels.empty() && p.labels.size() != p.fractions.size()) fail("one label per fraction");
      return p;
    }
    if (kw == "ROTATE") {
      Rotate r;
      do {
        std::string chamber = expect_ident("a chamber label");
        r.targets.emplace_back(std::move(chamber), expression(false));
      } while (!at_end());
      return r;
    }
    if (kw == "CLAIM_CYCLE") return ClaimCycle{};
    if (kw == "EXPECT") return parse_expect();
    fail_at(ErrorKind::SyntaxError, column, "a statement keyword, got '" + kw + "'");
  }

  Comparison comparison() {
    if (is_punct("~")) {
      next();
      return Comparison::Approx;
    }
    if (is_punct("<=")) {
      next();
      return Comparison::AtMost;
    }
    if (is_punct(">=")) {
      next();
      return Comparison::AtLeast;
    }
    fail("'~', '<=' or '>='");
  }

  Statement parse_expect() {
    const int column = peek().column;
    const std::string what = expect_ident("an expectation");
    if (what == "Q_total" || what == "Q_step" || what == "volume") {
      ExpectValue e;
      e.quantity = what == "Q_total" ? Quantity::TotalHeat : what == "Q_step" ? Quantity::StepHeat : Quantity::Volume;
      if (e.quantity == Quantity::Volume) e.chamber = expect_ident("a chamber label");
      e.comparison = comparison();
      e.value = expect_number("a number");
      if (!at_end()) e.tolerance = expect_positive("a positive tolerance");
      return e;
    }
    if (what == "chamber_count") return ExpectChamberCount{expect_count("a chamber count")};
    if (what == "verdict" || what == "cycle" || what == "contents") {
      const int c = peek().column;
      const std::string obs = expect_ident("an observer name");
      require_observer(obs, c);
      if (what == "contents") {
        std::string chamber = expect_ident("a chamber label");
        return ExpectContents{obs, std::move(chamber), expression(p_.header.system == SystemKind::Classical)};
      }
      const std::string word = expect_ident(what == "verdict" ? "'satisfied', 'violated' or 'not_applicable'"
                                                              : "'actual' or 'not_actual'");
      if (what == "cycle") {
        if (word != "actual" && word != "not_actual") fail_at(ErrorKind::SyntaxError, c, "'actual' or 'not_actual'");
        return ExpectCycle{obs, word == "actual"};
      }
      for (SecondLaw s : {SecondLaw::Satisfied, SecondLaw::Violated, SecondLaw::NotApplicable}) {
        if (word == to_string(s)) return ExpectVerdict{obs, s};
      }
      fail_at(ErrorKind::SyntaxError, c, "'satisfied', 'violated' or 'not_applicable'");
    }
    fail_at(ErrorKind::SyntaxError, column, "Q_total, Q_step, volume, chamber_count, verdict, cycle or contents");
  }

  Protocol p_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_ = 0;
  bool have_system_ = false;
  std::set<std::string> seen_header_;
  std::map<std::string, Symbol> symbols_;
  std::set<std::string> observers_;
};

}  // namespace

Protocol parse(std::string_view text) { return Parser().run(text); }

}  // namespace qgas

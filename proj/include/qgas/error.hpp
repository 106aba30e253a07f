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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgas {

enum class ErrorKind {
  NonSquare,
  NotHermitian,
  NonFinite,
  DimMismatch,
  DimFactorMismatch,
  ConvergenceFailure,
  NotNormalized,
  NotPositive,
  NotUnitTrace,
  InvalidPovm,
  InvalidInstrument,
  NotUnitary,
  InvalidPartition,
  PreconditionViolated,
  ProofStepFailed,
  NotOrthogonal,
  NotConvex,
  NonPositiveInput,
  VariantMismatch,
  TemperatureMismatch,
  NotQuantum,
  UnknownSpecies,
  IncompatibleReduction,
  SyntaxError,
  UndefinedName,
  DuplicateName,
  HeaderMissing,
  Runtime,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, std::string expected);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

// A failure raised while executing a protocol statement; wraps the original
// kind and remembers the statement's line.
class StepError : public Error {
 public:
  StepError(ErrorKind kind, int line, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::DimFactorMismatch: return "DimFactorMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::InvalidInstrument: return "InvalidInstrument";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ProofStepFailed: return "ProofStepFailed";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::VariantMismatch: return "VariantMismatch";
    case ErrorKind::TemperatureMismatch: return "TemperatureMismatch";
    case ErrorKind::NotQuantum: return "NotQuantum";
    case ErrorKind::UnknownSpecies: return "UnknownSpecies";
    case ErrorKind::IncompatibleReduction: return "IncompatibleReduction";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndefinedName: return "UndefinedName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::HeaderMissing: return "HeaderMissing";
    case ErrorKind::Runtime: return "Runtime";
  }
  return "Unknown";
}

inline ParseError::ParseError(ErrorKind kind, int line, int column, std::string expected)
    : Error(kind, std::string(to_string(kind)) + " at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + expected),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace qgas

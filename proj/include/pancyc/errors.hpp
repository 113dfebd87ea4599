// Copyright 2026 The pancyc Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace pancyc {

// Base of every domain failure raised by the library. Usage errors in the
// CLI are reported separately and never derive from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Enumeration produced more objects than the caller allowed.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("enumeration cap exceeded (" + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class FormulaDegenerate : public Error {
 public:
  explicit FormulaDegenerate(std::string name)
      : Error("formula degenerate: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class ImpossibleLength : public Error {
 public:
  using Error::Error;
};

class CoreTooSmall : public Error {
 public:
  using Error::Error;
};

class EmbedFailed : public Error {
 public:
  using Error::Error;
};

class StepFailed : public Error {
 public:
  StepFailed(int step, std::string detail)
      : Error("step " + std::to_string(step) + " failed: " + detail),
        step_(step),
        detail_(std::move(detail)) {}
  int step() const noexcept { return step_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int step_;
  std::string detail_;
};

class InsufficientSpareEdges : public StepFailed {
 public:
  explicit InsufficientSpareEdges(std::string detail) : StepFailed(3, std::move(detail)) {}
};

class NoCaseApplies : public Error {
 public:
  explicit NoCaseApplies(std::size_t length)
      : Error("no decoding case covers length " + std::to_string(length)), length_(length) {}
  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t length_;
};

class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

class NotAChord : public Error {
 public:
  using Error::Error;
};

class HostNotPancyclic : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pancyc

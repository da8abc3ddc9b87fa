// Copyright 2026 The fhh Authors
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

#ifndef FHH_ERRORS_HPP
#define FHH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fhh {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature did not meet its tolerance; carries the best estimate reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double err_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), err_estimate_(err_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double err_estimate() const noexcept { return err_estimate_; }

 private:
  double best_estimate_;
  double err_estimate_;
};

/// The integrand produced a non-finite value inside the interval.
class IntegrandError : public std::runtime_error {
 public:
  IntegrandError(const std::string& what, double at) : std::runtime_error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Syntax error in expression text. offset is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Expression evaluation failed at a specific node (domain violation or a
/// point where the derivative does not exist).
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string node)
      : std::runtime_error(what), node_(std::move(node)) {}
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

}  // namespace fhh

#endif  // FHH_ERRORS_HPP

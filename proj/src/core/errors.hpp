/*
 * Copyright 2026 The pdse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace pdse {

enum class ErrorKind { kConfig, kDomain, kInfeasible, kInfeasibleDesign, kNumerical, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::kDomain, what) {}
};

// A single penalty term has no finite value (log argument out of range).
// Search callers turn this into an infeasible duplet.
class PenaltyUndefined : public Error {
 public:
  explicit PenaltyUndefined(const std::string& what) : Error(ErrorKind::kInfeasible, what) {}
};

// No duplet of the search space satisfies the budget.
class InfeasibleDesign : public Error {
 public:
  InfeasibleDesign(const std::string& what, int closest_n, double closest_baud, double deficit_db)
      : Error(ErrorKind::kInfeasibleDesign, what),
        closest_n_lambda(closest_n),
        closest_baud_gbaud(closest_baud),
        deficit_db(deficit_db) {}
  int closest_n_lambda;
  double closest_baud_gbaud;
  double deficit_db;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::kNumerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace pdse

// Copyright 2026 The rotcap Authors.
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

#include <stdexcept>
#include <string>

namespace rotcap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked to act along an axis the grid does not have.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Fields living on different grids were combined.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// A Fourier multiplier vanished (or went negative) where it must be inverted.
class SingularMultiplierError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the input was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Density dropped below the configured floor.
class VacuumError : public Error {
 public:
  VacuumError(const std::string& what, double time, double min_density)
      : Error(what), time_(time), min_density_(min_density) {}
  double time() const { return time_; }
  double min_density() const { return min_density_; }

 private:
  double time_;
  double min_density_;
};

/// Requested time step violates the stability rule of the integrator.
class CflError : public Error {
 public:
  CflError(const std::string& what, double dt, double dt_max)
      : Error(what), dt_(dt), dt_max_(dt_max) {}
  double dt() const { return dt_; }
  double dt_max() const { return dt_max_; }

 private:
  double dt_;
  double dt_max_;
};

/// An iterative solver hit its iteration cap.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Malformed or unsupported persisted data.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected; `key` names the offending dotted key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace rotcap

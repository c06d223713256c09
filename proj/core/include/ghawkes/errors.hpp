// Copyright 2026 The ghawkes Authors
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

namespace ghawkes {

/// Malformed or out-of-range experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation requires the subcritical regime and the
/// configuration is not subcritical (CLI exit code 3).
class SupercriticalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated, e.g. a thinning bound that failed to
/// dominate the true intensity (CLI exit code 4).
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative solver hit its iteration cap. Carries the last residual.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// A deterministic trajectory exceeded the blow-up threshold.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace ghawkes

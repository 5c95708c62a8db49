// SPDX-License-Identifier: Apache-2.0
//
// zdmt: diversity-multiplexing tradeoff of the MIMO Z interference channel
// Copyright (C) 2026 The zdmt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace zdmt {

/// Raised when an argument lies outside the domain of a tradeoff curve or
/// violates a structural precondition. Never clamped silently.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Internal solver failure (e.g. an infeasible program that should never be
/// infeasible, or a simplex that failed to converge).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zdmt

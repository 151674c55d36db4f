// bdris-wpt: beamforming and waveform design for BD-RIS assisted wireless power transfer
// Copyright (C) 2026 The bdris-wpt Authors
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
#pragma once

#include <stdexcept>
#include <string>

namespace bdris
{
// Invalid physical inputs (distances, Rician factor, frequency plan).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Caller violated a documented precondition.
class ContractError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Singular or ill-conditioned linear algebra.
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Degenerate signal (zero power etc.).
class SignalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Configuration could not be parsed or validated.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Convex solver did not reach an acceptable status.
class SolverError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};
} // namespace bdris

// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The mgfcap authors
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

namespace mgfcap {

// Base of everything the numerical core throws. The C layer maps each
// subclass onto one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (Ei at 0, Ci at x <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Argument sits on a pole of a gamma factor.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Model or configuration parameter outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Series, quadrature or contour integral failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Operation not available for this model variant.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace mgfcap

// Copyright 2026 The arrowq Authors
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

namespace arrowq {

// Base of every error the library throws. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An input exceeds an enumeration or memory guard.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

// Malformed argument: out-of-range alternative, bad permutation, zero vector...
class InvalidArgumentError : public Error {
  public:
    using Error::Error;
};

// The call is well-formed but an operation precondition does not hold,
// e.g. asking for cloning fidelity on a circuit that is not dictatorial.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// A structured input (rule file, KS instance) fails validation.
class ValidationError : public Error {
  public:
    using Error::Error;
};

}  // namespace arrowq

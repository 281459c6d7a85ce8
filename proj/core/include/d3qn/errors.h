// Copyright 2026 The d3qn Authors.
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

#ifndef D3QN_ERRORS_H_
#define D3QN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace d3qn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (world file, config file). Carries line context
// in the message when it is known.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A world in which the simulator cannot operate (e.g. no free spawn pose).
class WorldError : public Error {
 public:
  using Error::Error;
};

// API misuse: stepping a finished episode, empty history, stale tape, ...
class UsageError : public Error {
 public:
  using Error::Error;
};

// Inconsistent network or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure during learning (non-finite loss or gradient).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Checkpoint or state file that cannot be read back.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace d3qn

#endif  // D3QN_ERRORS_H_

// Copyright 2026 The dqtrl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dqtrl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Qubit or action index outside its valid range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Gate with an invalid qubit combination (e.g. control == target).
class InvalidGateError : public Error {
  public:
    using Error::Error;
};

/// Vector length disagrees with the shape it is paired with.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// More generated parameters requested than basis states available.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Invalid configuration value.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Operation called outside its contract (e.g. stepping a finished episode).
class ContractViolation : public Error {
  public:
    using Error::Error;
};

/// Synchronization protocol misuse (empty round, mismatched packets).
class ProtocolError : public Error {
  public:
    using Error::Error;
};

/// Gradient packet carrying NaN or Inf.
class PoisonedPacketError : public Error {
  public:
    using Error::Error;
};

/// A synchronization round was abandoned because an agent failed.
class RoundAborted : public Error {
  public:
    using Error::Error;
};

/// Malformed or inconsistent checkpoint.
class LoadError : public Error {
  public:
    using Error::Error;
};

} // namespace dqtrl

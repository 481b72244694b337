// Copyright 2026 The collide Authors
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

namespace collide {

/// Raised when a caller passes a value outside an operation's domain
/// (bad qubit index, dimension mismatch, malformed density operator).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computed quantity fails an internal cross-check.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The vectors requested for a subspace do not span it (e.g. psi parallel to phi).
struct DegenerateSpanError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// An output file or directory could not be written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace collide

// Copyright 2026 The cvcluster Authors
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

namespace cvcluster {

/// A documented precondition of an operation was violated by the caller.
/// The CLI maps this family to exit code 3.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Measurement angles violate the equality required by a virtual completion.
class RestrictionError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

/// A teleported single-mode gate is undefined because both homodyne angles
/// of a pair select the same quadrature.
class SingularAngleError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

/// The missing splitter sits on the state side; no measurement restriction
/// can supply it.
class TypeBCompletionError : public PreconditionError {
   public:
    TypeBCompletionError() : PreconditionError("type (b): cannot be completed by restricting measurements") {}
};

/// Operand shapes disagree (matrix dimensions, mode counts).
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cvcluster

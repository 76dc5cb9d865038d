// Copyright 2026 The cka Authors
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

namespace cka {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
/// A precondition of an operation was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};
/// The quantum model does not support a requested derivation.
struct ModelError : Error {
    using Error::Error;
};
struct EstimationError : Error {
    using Error::Error;
};
struct ConfigurationError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace cka

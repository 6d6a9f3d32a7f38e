// Copyright 2026 The noonlab Authors
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
#include <string_view>

namespace noonlab {

enum class ErrorKind {
    NegativeOccupation,
    LengthMismatch,
    RegistryMismatch,
    DuplicateMode,
    UnknownMode,
    OverlappingModes,
    IdenticalModes,
    NotPolarized,
    ModeOccupied,
    PhotonCapExceeded,
    NonFinite,
    ZeroNorm,
    InvalidDeletionTarget,
    InvalidArgument,
    SectorTooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Raised by every library operation on a contract violation. The kind is
/// stable and is what tests and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace noonlab

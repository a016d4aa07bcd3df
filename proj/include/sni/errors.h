// Copyright 2026 The SNI-Sim Authors.
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

#ifndef SNI_ERRORS_H
#define SNI_ERRORS_H

#include <stdexcept>
#include <string>

namespace sni {

/// Operands sized for different qubit counts or layouts.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parameter outside its mathematical domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Internal contract violated by a caller.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed or inconsistent configuration. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The mitigation protocol cannot proceed (e.g. estimated rate >= 1/2). CLI exit code 1.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested simulation exceeds the supported desk scale.
struct ScaleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Statistical estimation impossible (e.g. no samples).
struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Channel not invertible in the Pauli-transfer sense.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejection sampling failed to find a nontrivial error within the iteration cap.
struct SamplingError : ProtocolError {
    using ProtocolError::ProtocolError;
};

}  // namespace sni

#endif

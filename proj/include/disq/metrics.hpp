// Copyright 2026 The disqsim Authors
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

#include <cstddef>

#include "disq/circuit.hpp"

namespace disq {

struct CircuitMetrics {
    std::size_t qubits = 0;           // data qubits
    std::size_t depth = 0;            // longest dependency chain, barriers and VGs weigh 0
    std::size_t two_qubit_count = 0;  // two-qubit unitaries
    double igd = 0.0;                 // interaction graph density over data qubits

    bool operator==(const CircuitMetrics&) const = default;
};

CircuitMetrics circuit_metrics(const Circuit& c);

}  // namespace disq

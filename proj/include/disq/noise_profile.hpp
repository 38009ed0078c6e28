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

namespace disq {

/// Per-device error surrogate: depolarizing gate errors plus symmetric readout
/// flips and reset failures.
struct DeviceNoiseProfile {
    double p1 = 0.0;       // single-qubit depolarizing probability per gate
    double p2 = 0.0;       // two-qubit depolarizing probability per gate
    double p_ro = 0.0;     // readout bit-flip probability per measurement
    double p_reset = 0.0;  // probability that a reset leaves the qubit untouched

    bool operator==(const DeviceNoiseProfile&) const = default;
};

}  // namespace disq

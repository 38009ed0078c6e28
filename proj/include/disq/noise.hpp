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
#include <string_view>
#include <vector>

#include "disq/architecture.hpp"
#include "disq/assembler.hpp"
#include "disq/noise_profile.hpp"

namespace disq {

struct LinkNoiseProfile {
    double length_km = 0.0;
    double alpha = 0.0;
    double eta = 1.0;    // transmissivity exp(-alpha L)
    double p_epr = 0.0;  // depolarizing probability on the delivered pair
};

enum class ChannelKind { None, Depolarizing1, Depolarizing2, ReadoutFlip, EprDepolarizing, ResetFailure };

std::string_view channel_name(ChannelKind k);
ChannelKind channel_from_name(std::string_view name);

struct ErrorChannel {
    ChannelKind kind = ChannelKind::None;
    double p = 0.0;

    bool operator==(const ErrorChannel&) const = default;
};

/// One channel per instruction of the assembled circuit, indexed by
/// instruction position (the trace visits every position once).
struct NoiseSpec {
    std::vector<ErrorChannel> channels;
    /// Mean probability over instructions with a non-trivial channel; 0 if none.
    double average_gate_noise = 0.0;
    std::size_t noisy_instructions = 0;

    bool operator==(const NoiseSpec&) const = default;
};

/// exp(-alpha * length_km). Throws InputError on negative inputs.
double transmissivity(double alpha, double length_km);

/// p_epr = kappa * (1 - eta). Throws InputError when kappa is outside [0, 1].
LinkNoiseProfile link_noise(double alpha, double length_km, double kappa = 1.0);

/// EPR preparation CX gets the link channel, its H none; local gates get the
/// owning QPU's device noise. Zero-probability channels are stored as None.
NoiseSpec build_noise_spec(const AssembledCircuit& a, const ArchitectureSpec& spec, double kappa = 1.0);

Json noise_spec_to_json(const NoiseSpec& ns);
NoiseSpec noise_spec_from_json(const Json& j);

}  // namespace disq

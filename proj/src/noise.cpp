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

#include "disq/noise.hpp"

#include <array>
#include <cmath>
#include <string>

#include "disq/error.hpp"

namespace disq {

namespace {
constexpr std::array<std::string_view, 6> k_channel_names = {"none", "depolarizing-1q", "depolarizing-2q",
                                                             "readout-flip", "epr-depolarizing", "reset-failure"};
}  // namespace

std::string_view channel_name(ChannelKind k) { return k_channel_names[static_cast<std::size_t>(k)]; }

ChannelKind channel_from_name(std::string_view name) {
    for (std::size_t i = 0; i < k_channel_names.size(); ++i) {
        if (k_channel_names[i] == name) return static_cast<ChannelKind>(i);
    }
    throw InputError("unknown error channel \"" + std::string(name) + "\"");
}

double transmissivity(double alpha, double length_km) {
    if (!(alpha >= 0.0) || !(length_km >= 0.0)) {
        throw InputError("transmissivity needs non-negative alpha and length");
    }
    return std::exp(-alpha * length_km);
}

LinkNoiseProfile link_noise(double alpha, double length_km, double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw InputError("kappa must lie in [0, 1]");
    LinkNoiseProfile l;
    l.length_km = length_km;
    l.alpha = alpha;
    l.eta = transmissivity(alpha, length_km);
    l.p_epr = kappa * (1.0 - l.eta);
    return l;
}

NoiseSpec build_noise_spec(const AssembledCircuit& a, const ArchitectureSpec& spec, double kappa) {
    NoiseSpec ns;
    ns.channels.resize(a.circuit.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.circuit.size(); ++i) {
        const auto& ins = a.circuit[i];
        ErrorChannel ch;
        const std::size_t qa = a.qpu_of_qubit.at(ins.qubits.front());
        bool spans = false;
        for (Qubit q : ins.qubits) spans = spans || a.qpu_of_qubit.at(q) != qa;

        if (is_epr_preparation(ins)) {
            if (ins.kind == GateKind::CX) {
                if (!spans) throw InternalError("EPR preparation at instruction " + std::to_string(i) + " is local");
                const std::string& ida = a.qpu_ids[qa];
                const std::string& idb = a.qpu_ids[a.qpu_of_qubit.at(ins.qubits[1])];
                const NetworkEdge* e = spec.network.find(ida, idb);
                if (!e) throw InternalError("EPR pair between " + ida + " and " + idb + " has no optical link");
                ch = {ChannelKind::EprDepolarizing, link_noise(spec.network.alpha, e->length_km, kappa).p_epr};
            }
        } else {
            if (spans && ins.kind != GateKind::Barrier) {
                throw InternalError("instruction " + std::to_string(i) + " (" + std::string(gate_name(ins.kind)) +
                                    ") spans QPUs but is not an EPR preparation");
            }
            const DeviceNoiseProfile& dev = spec.qpu(a.qpu_ids[qa]).noise;
            if (is_single_qubit_unitary(ins.kind)) {
                ch = {ChannelKind::Depolarizing1, dev.p1};
            } else if (is_two_qubit_unitary(ins.kind)) {
                ch = {ChannelKind::Depolarizing2, dev.p2};
            } else if (ins.kind == GateKind::Measure) {
                ch = {ChannelKind::ReadoutFlip, dev.p_ro};
            } else if (ins.kind == GateKind::Reset) {
                ch = {ChannelKind::ResetFailure, dev.p_reset};
            }
        }
        if (ch.p <= 0.0) ch = ErrorChannel{};
        if (ch.kind != ChannelKind::None) {
            ++ns.noisy_instructions;
            sum += ch.p;
        }
        ns.channels[i] = ch;
    }
    ns.average_gate_noise = ns.noisy_instructions ? sum / static_cast<double>(ns.noisy_instructions) : 0.0;
    return ns;
}

Json noise_spec_to_json(const NoiseSpec& ns) {
    Json ch = Json::array();
    for (const auto& c : ns.channels) ch.push_back(Json{{"channel", channel_name(c.kind)}, {"p", c.p}});
    return Json{{"average_gate_noise", ns.average_gate_noise},
                {"noisy_instructions", ns.noisy_instructions},
                {"channels", ch}};
}

NoiseSpec noise_spec_from_json(const Json& j) {
    try {
        NoiseSpec ns;
        ns.average_gate_noise = j.at("average_gate_noise").get<double>();
        ns.noisy_instructions = j.at("noisy_instructions").get<std::size_t>();
        for (const auto& c : j.at("channels")) {
            ns.channels.push_back({channel_from_name(c.at("channel").get<std::string>()), c.at("p").get<double>()});
        }
        return ns;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("noise spec: ") + e.what());
    }
}

}  // namespace disq

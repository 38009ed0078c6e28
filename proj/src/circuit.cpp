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

#include "disq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disq/error.hpp"

namespace disq {

bool Instruction::touches(Qubit q) const {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

Instruction make_gate(GateKind kind, std::initializer_list<Qubit> qubits,
                      std::initializer_list<double> params) {
    Instruction ins;
    ins.kind = kind;
    ins.qubits = qubits;
    ins.params = params;
    return ins;
}

Instruction make_measure(Qubit q, Clbit c) {
    Instruction ins;
    ins.kind = GateKind::Measure;
    ins.qubits = {q};
    ins.clbits = {c};
    return ins;
}

Instruction make_reset(Qubit q) {
    Instruction ins;
    ins.kind = GateKind::Reset;
    ins.qubits = {q};
    return ins;
}

Instruction make_barrier(std::vector<Qubit> qubits) {
    Instruction ins;
    ins.kind = GateKind::Barrier;
    ins.qubits = std::move(qubits);
    return ins;
}

Instruction with_condition(Instruction ins, Clbit clbit, int value) {
    ins.condition = Condition{clbit, value};
    return ins;
}

Instruction with_tag(Instruction ins, std::string tag) {
    ins.tag = std::move(tag);
    return ins;
}

Circuit::Circuit(std::size_t num_qubits, std::size_t num_clbits)
    : roles_(num_qubits, QubitRole::Data), num_clbits_(num_clbits) {}

void Circuit::set_role(Qubit q, QubitRole role) {
    if (q >= roles_.size()) throw InputError("set_role: qubit " + std::to_string(q) + " out of range");
    roles_[q] = role;
}

void Circuit::check(const Instruction& ins) const {
    const auto& info = gate_info(ins.kind);
    const std::string name(info.name);
    if (info.arity >= 0 && ins.qubits.size() != static_cast<std::size_t>(info.arity)) {
        throw InputError(name + " expects " + std::to_string(info.arity) + " qubit(s), got " +
                         std::to_string(ins.qubits.size()));
    }
    if (info.arity < 0 && ins.qubits.empty()) throw InputError(name + " needs at least one qubit");
    if (ins.kind != GateKind::VirtualGate &&
        ins.params.size() != static_cast<std::size_t>(info.num_params)) {
        throw InputError(name + " expects " + std::to_string(info.num_params) + " parameter(s)");
    }
    for (double p : ins.params) {
        if (!std::isfinite(p)) throw InputError(name + ": non-finite parameter");
    }
    for (std::size_t i = 0; i < ins.qubits.size(); ++i) {
        if (ins.qubits[i] >= roles_.size()) {
            throw InputError(name + ": qubit index " + std::to_string(ins.qubits[i]) +
                             " out of range (" + std::to_string(roles_.size()) + " qubits)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (ins.qubits[i] == ins.qubits[j]) throw InputError(name + ": repeated qubit operand");
        }
    }
    const std::size_t expected_clbits = ins.kind == GateKind::Measure ? ins.qubits.size() : 0;
    if (ins.clbits.size() != expected_clbits) {
        throw InputError(name + ": expects " + std::to_string(expected_clbits) + " clbit(s)");
    }
    for (Clbit c : ins.clbits) {
        if (c >= num_clbits_) {
            throw InputError(name + ": clbit index " + std::to_string(c) + " out of range");
        }
    }
    if (ins.condition) {
        if (!info.unitary) throw InputError(name + ": conditions are only allowed on unitary gates");
        if (ins.condition->clbit >= num_clbits_) throw InputError(name + ": condition clbit out of range");
        if (ins.condition->value != 0 && ins.condition->value != 1) {
            throw InputError(name + ": condition value must be 0 or 1");
        }
    }
}

void Circuit::append(Instruction ins) {
    check(ins);
    instructions_.push_back(std::move(ins));
}

void Circuit::append(const Circuit& other) {
    for (const auto& ins : other.instructions()) append(ins);
}

Qubit Circuit::add_qubit(QubitRole role) {
    roles_.push_back(role);
    return static_cast<Qubit>(roles_.size() - 1);
}

Clbit Circuit::add_clbit() { return static_cast<Clbit>(num_clbits_++); }

void Circuit::resize_clbits(std::size_t n) {
    if (n < num_clbits_) throw InputError("resize_clbits cannot shrink the classical register");
    num_clbits_ = n;
}

Circuit reorder(const Circuit& c, const std::vector<std::size_t>& order) {
    Circuit out(c.num_qubits(), c.num_clbits());
    for (Qubit q = 0; q < c.num_qubits(); ++q) out.set_role(q, c.role(q));
    for (std::size_t i : order) out.append(c[i]);
    return out;
}

}  // namespace disq

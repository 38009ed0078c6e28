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
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "disq/gates.hpp"

namespace disq {

using Qubit = std::uint32_t;
using Clbit = std::uint32_t;

enum class QubitRole : std::uint8_t { Data, Communication };

/// Single classical-bit equality test guarding a unitary.
struct Condition {
    Clbit clbit = 0;
    int value = 1;

    bool operator==(const Condition&) const = default;
};

struct Instruction {
    GateKind kind = GateKind::Barrier;
    std::vector<double> params;
    std::vector<Qubit> qubits;
    std::vector<Clbit> clbits;
    std::optional<Condition> condition;
    std::optional<std::string> tag;

    bool operator==(const Instruction&) const = default;

    [[nodiscard]] bool is_unitary() const { return disq::is_unitary(kind); }
    [[nodiscard]] bool is_two_qubit_unitary() const { return disq::is_two_qubit_unitary(kind); }
    [[nodiscard]] bool touches(Qubit q) const;
};

/// Convenience constructors.
Instruction make_gate(GateKind kind, std::initializer_list<Qubit> qubits,
                      std::initializer_list<double> params = {});
Instruction make_measure(Qubit q, Clbit c);
Instruction make_reset(Qubit q);
Instruction make_barrier(std::vector<Qubit> qubits);
Instruction with_condition(Instruction ins, Clbit clbit, int value = 1);
Instruction with_tag(Instruction ins, std::string tag);

/// Ordered instruction list over fixed qubit and classical registers.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits, std::size_t num_clbits = 0);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return roles_.size(); }
    [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
    [[nodiscard]] const std::vector<Instruction>& instructions() const noexcept {
        return instructions_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return instructions_.size(); }
    [[nodiscard]] bool empty() const noexcept { return instructions_.empty(); }
    [[nodiscard]] const Instruction& operator[](std::size_t i) const { return instructions_[i]; }
    [[nodiscard]] auto begin() const noexcept { return instructions_.begin(); }
    [[nodiscard]] auto end() const noexcept { return instructions_.end(); }

    [[nodiscard]] const std::vector<QubitRole>& qubit_roles() const noexcept { return roles_; }
    [[nodiscard]] QubitRole role(Qubit q) const { return roles_.at(q); }
    void set_role(Qubit q, QubitRole role);

    /// Validates and appends; throws InputError on a malformed instruction.
    void append(Instruction ins);
    void append(const Circuit& other);

    Qubit add_qubit(QubitRole role = QubitRole::Data);
    Clbit add_clbit();
    void resize_clbits(std::size_t n);

    bool operator==(const Circuit&) const = default;

private:
    void check(const Instruction& ins) const;

    std::vector<QubitRole> roles_;
    std::size_t num_clbits_ = 0;
    std::vector<Instruction> instructions_;
};

/// Returns the circuit restricted to instructions in the given order.
Circuit reorder(const Circuit& c, const std::vector<std::size_t>& order);

}  // namespace disq

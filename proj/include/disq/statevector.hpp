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
#include <vector>

#include "disq/circuit.hpp"
#include "disq/gates.hpp"

namespace disq {

inline constexpr std::size_t k_default_qubit_limit = 26;

/// Dense amplitude array over the qubits currently in superposition. A qubit
/// joins the array when a gate first creates superposition on it and leaves
/// it when measured or reset; outside the array it holds a definite 0 or 1.
/// Slot k of the array is bit k of the amplitude index.
class StateVector {
public:
    explicit StateVector(std::size_t num_qubits, std::size_t qubit_limit = k_default_qubit_limit);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return slot_of_.size(); }
    [[nodiscard]] std::size_t allocated() const noexcept { return qubit_of_slot_.size(); }
    [[nodiscard]] bool is_allocated(Qubit q) const { return slot_of_[q] >= 0; }
    /// Definite value of an unallocated qubit.
    [[nodiscard]] int classical_value(Qubit q) const { return value_[q]; }
    [[nodiscard]] const std::vector<Complex>& amplitudes() const noexcept { return amp_; }
    [[nodiscard]] const std::vector<Qubit>& slots() const noexcept { return qubit_of_slot_; }
    [[nodiscard]] int slot_of(Qubit q) const { return slot_of_[q]; }

    void apply_1q(Qubit q, const Mat2& m);
    /// Basis index convention of Mat4: 2*b(a) + b(b).
    void apply_2q(Qubit a, Qubit b, const Mat4& m);
    void apply_swap(Qubit a, Qubit b);
    /// Unitary instruction, condition ignored.
    void apply(const Instruction& ins);
    /// 1 = X, 2 = Y, 3 = Z.
    void apply_pauli(Qubit q, int pauli);

    [[nodiscard]] double probability_one(Qubit q) const;
    /// Projects onto the outcome, renormalizes, and releases the qubit.
    void collapse(Qubit q, int outcome);
    /// Releases a measured or unallocated qubit as |0>.
    void set_zero(Qubit q);

    [[nodiscard]] double norm_squared() const;
    /// Same allocation layout and amplitudes equal up to a global phase.
    [[nodiscard]] bool same_state(const StateVector& other, double tol) const;
    /// Full 2^n amplitude vector (qubit q is bit q); for tests on small registers.
    [[nodiscard]] std::vector<Complex> dense() const;

private:
    void allocate(Qubit q);
    void release_if_definite(Qubit q);
    void kernel_1q(std::size_t slot, const Mat2& m);
    void kernel_2q(std::size_t s0, std::size_t s1, const Mat4& m);

    std::size_t limit_;
    std::vector<int> slot_of_;
    std::vector<std::uint8_t> value_;
    std::vector<Qubit> qubit_of_slot_;
    std::vector<Complex> amp_;
};

}  // namespace disq

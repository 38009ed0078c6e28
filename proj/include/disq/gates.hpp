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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace disq {

using Complex = std::complex<double>;

/// 2x2 unitary, row-major.
using Mat2 = std::array<Complex, 4>;
/// 4x4 unitary, row-major. Basis index is 2*b0 + b1 where b0 belongs to the
/// instruction's first qubit.
using Mat4 = std::array<Complex, 16>;

enum class GateKind : std::uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    SXdg,
    RX,
    RY,
    RZ,
    CX,
    CZ,
    SWAP,
    RZZ,
    RXX,
    Measure,
    Reset,
    Barrier,
    VirtualGate,
};

inline constexpr std::size_t k_num_gate_kinds = 22;

struct GateInfo {
    GateKind kind;
    std::string_view name;  // lowercase QASM / JSON spelling
    int arity;              // fixed qubit count, or -1 when variable (at least 1)
    int num_params;
    bool unitary;
};

const GateInfo& gate_info(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
std::span<const GateInfo> all_gates();

[[nodiscard]] bool is_unitary(GateKind kind);
[[nodiscard]] bool is_single_qubit_unitary(GateKind kind);
[[nodiscard]] bool is_two_qubit_unitary(GateKind kind);

Mat2 matrix_1q(GateKind kind, std::span<const double> params);
Mat4 matrix_2q(GateKind kind, std::span<const double> params);

Mat2 mul(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);

/// Rotations used by the synthesis code.
Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double theta);

/// True when a and b agree up to a global phase within tol (max-abs entry error).
bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol);

/// Euler decomposition U = e^{i phase} RZ(phi) RY(theta) RZ(lambda).
struct ZyzAngles {
    double theta;
    double phi;
    double lambda;
    double phase;
};
ZyzAngles zyz_decompose(const Mat2& u);

}  // namespace disq

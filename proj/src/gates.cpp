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

#include "disq/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace disq {

namespace {

constexpr std::array<GateInfo, k_num_gate_kinds> k_gates = {{
    {GateKind::H, "h", 1, 0, true},
    {GateKind::X, "x", 1, 0, true},
    {GateKind::Y, "y", 1, 0, true},
    {GateKind::Z, "z", 1, 0, true},
    {GateKind::S, "s", 1, 0, true},
    {GateKind::Sdg, "sdg", 1, 0, true},
    {GateKind::T, "t", 1, 0, true},
    {GateKind::Tdg, "tdg", 1, 0, true},
    {GateKind::SX, "sx", 1, 0, true},
    {GateKind::SXdg, "sxdg", 1, 0, true},
    {GateKind::RX, "rx", 1, 1, true},
    {GateKind::RY, "ry", 1, 1, true},
    {GateKind::RZ, "rz", 1, 1, true},
    {GateKind::CX, "cx", 2, 0, true},
    {GateKind::CZ, "cz", 2, 0, true},
    {GateKind::SWAP, "swap", 2, 0, true},
    {GateKind::RZZ, "rzz", 2, 1, true},
    {GateKind::RXX, "rxx", 2, 1, true},
    {GateKind::Measure, "measure", 1, 0, false},
    {GateKind::Reset, "reset", 1, 0, false},
    {GateKind::Barrier, "barrier", -1, 0, false},
    {GateKind::VirtualGate, "vg", -1, 0, false},
}};

constexpr Complex k_i{0.0, 1.0};

}  // namespace

const GateInfo& gate_info(GateKind kind) { return k_gates[static_cast<std::size_t>(kind)]; }

std::string_view gate_name(GateKind kind) { return gate_info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (const auto& g : k_gates) {
        if (g.name == name) return g.kind;
    }
    // Common aliases accepted on input only.
    if (name == "cnot") return GateKind::CX;
    return std::nullopt;
}

std::span<const GateInfo> all_gates() { return k_gates; }

bool is_unitary(GateKind kind) { return gate_info(kind).unitary; }

bool is_single_qubit_unitary(GateKind kind) {
    const auto& g = gate_info(kind);
    return g.unitary && g.arity == 1;
}

bool is_two_qubit_unitary(GateKind kind) {
    const auto& g = gate_info(kind);
    return g.unitary && g.arity == 2;
}

Mat2 rx_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
}

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Mat2 rz_matrix(double theta) {
    return {std::exp(-k_i * (theta / 2)), 0.0, 0.0, std::exp(k_i * (theta / 2))};
}

Mat2 matrix_1q(GateKind kind, std::span<const double> params) {
    using std::numbers::pi;
    const double r = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -k_i, k_i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S: return {1.0, 0.0, 0.0, k_i};
        case GateKind::Sdg: return {1.0, 0.0, 0.0, -k_i};
        case GateKind::T: return {1.0, 0.0, 0.0, std::exp(k_i * (pi / 4))};
        case GateKind::Tdg: return {1.0, 0.0, 0.0, std::exp(-k_i * (pi / 4))};
        case GateKind::SX:
            return {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5}, Complex{0.5, 0.5}};
        case GateKind::SXdg:
            return {Complex{0.5, -0.5}, Complex{0.5, 0.5}, Complex{0.5, 0.5}, Complex{0.5, -0.5}};
        case GateKind::RX: return rx_matrix(params[0]);
        case GateKind::RY: return ry_matrix(params[0]);
        case GateKind::RZ: return rz_matrix(params[0]);
        default: break;
    }
    throw std::logic_error("matrix_1q: not a single-qubit unitary: " + std::string(gate_name(kind)));
}

Mat4 matrix_2q(GateKind kind, std::span<const double> params) {
    Mat4 m{};
    switch (kind) {
        case GateKind::CX:
            m[0 * 4 + 0] = m[1 * 4 + 1] = m[2 * 4 + 3] = m[3 * 4 + 2] = 1.0;
            return m;
        case GateKind::CZ:
            m[0] = m[5] = m[10] = 1.0;
            m[15] = -1.0;
            return m;
        case GateKind::SWAP:
            m[0 * 4 + 0] = m[1 * 4 + 2] = m[2 * 4 + 1] = m[3 * 4 + 3] = 1.0;
            return m;
        case GateKind::RZZ: {
            const double t = params[0] / 2;
            m[0] = m[15] = std::exp(-k_i * t);
            m[5] = m[10] = std::exp(k_i * t);
            return m;
        }
        case GateKind::RXX: {
            const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
            for (int d = 0; d < 4; ++d) m[d * 4 + d] = c;
            m[0 * 4 + 3] = m[1 * 4 + 2] = m[2 * 4 + 1] = m[3 * 4 + 0] = Complex{0, -s};
            return m;
        }
        default: break;
    }
    throw std::logic_error("matrix_2q: not a two-qubit unitary: " + std::string(gate_name(kind)));
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(b[i]) > std::abs(b[k])) k = i;
    }
    if (std::abs(a[k]) < 1e-300) return false;
    const Complex phase = a[k] / b[k];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(a[i] - phase * b[i]) > tol) return false;
    }
    return true;
}

ZyzAngles zyz_decompose(const Mat2& u) {
    const Complex det = u[0] * u[3] - u[1] * u[2];
    const Complex root = std::sqrt(det);
    const Complex v00 = u[0] / root;
    const Complex v10 = u[2] / root;
    const double c = std::abs(v00), s = std::abs(v10);
    ZyzAngles a{};
    a.theta = 2.0 * std::atan2(s, c);
    double sum = 0.0, diff = 0.0;  // phi + lambda, phi - lambda
    if (c > 1e-12) sum = -2.0 * std::arg(v00);
    if (s > 1e-12) diff = 2.0 * std::arg(v10);
    a.phi = (sum + diff) / 2;
    a.lambda = (sum - diff) / 2;
    const Mat2 m = mul(rz_matrix(a.phi), mul(ry_matrix(a.theta), rz_matrix(a.lambda)));
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(m[i]) > std::abs(m[k])) k = i;
    }
    a.phase = std::arg(u[k] / m[k]);
    return a;
}

}  // namespace disq

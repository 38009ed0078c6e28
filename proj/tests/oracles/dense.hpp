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

// Test-only dense linear algebra. Gate matrices are written out here from
// their textbook definitions and never taken from the library under test.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "disq/circuit.hpp"

namespace oracle {

using C = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double k_pi = 3.14159265358979323846;

inline Matrix mat2(C a, C b, C c, C d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

/// Gate matrix in the instruction's operand order: for two qubits the row
/// index is 2*b(first) + b(second).
inline Matrix gate_matrix(disq::GateKind kind, const std::vector<double>& p) {
    using disq::GateKind;
    const C i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H: return mat2(r, r, r, -r);
        case GateKind::X: return mat2(0, 1, 1, 0);
        case GateKind::Y: return mat2(0, -i, i, 0);
        case GateKind::Z: return mat2(1, 0, 0, -1);
        case GateKind::S: return mat2(1, 0, 0, i);
        case GateKind::Sdg: return mat2(1, 0, 0, -i);
        case GateKind::T: return mat2(1, 0, 0, std::exp(i * (k_pi / 4)));
        case GateKind::Tdg: return mat2(1, 0, 0, std::exp(-i * (k_pi / 4)));
        case GateKind::SX: return mat2(C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5));
        case GateKind::SXdg: return mat2(C(0.5, -0.5), C(0.5, 0.5), C(0.5, 0.5), C(0.5, -0.5));
        case GateKind::RX: {
            const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
            return mat2(c, -i * s, -i * s, c);
        }
        case GateKind::RY: {
            const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
            return mat2(c, -s, s, c);
        }
        case GateKind::RZ: return mat2(std::exp(-i * (p[0] / 2)), 0, 0, std::exp(i * (p[0] / 2)));
        case GateKind::CX: {
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            return m;
        }
        case GateKind::CZ: {
            Matrix m = Matrix::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        }
        case GateKind::SWAP: {
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            return m;
        }
        case GateKind::RZZ: {
            Matrix m = Matrix::Zero(4, 4);
            const C a = std::exp(-i * (p[0] / 2)), b = std::exp(i * (p[0] / 2));
            m(0, 0) = a;
            m(1, 1) = b;
            m(2, 2) = b;
            m(3, 3) = a;
            return m;
        }
        case GateKind::RXX: {
            const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
            Matrix m = Matrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                m(k, k) = c;
                m(k, 3 - k) = -i * s;
            }
            return m;
        }
        default: throw std::invalid_argument("no matrix for this gate kind");
    }
}

/// Lifts a gate acting on `qs` to the full register; basis bit q is qubit q.
inline Matrix embed(const Matrix& g, const std::vector<disq::Qubit>& qs, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = qs.size();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t col = 0;
        for (std::size_t j = 0; j < k; ++j) col = col << 1 | (x >> qs[j] & 1);
        std::size_t rest = x;
        for (auto q : qs) rest &= ~(std::size_t{1} << q);
        for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
            std::size_t y = rest;
            for (std::size_t j = 0; j < k; ++j) {
                if (row >> (k - 1 - j) & 1) y |= std::size_t{1} << qs[j];
            }
            out(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) +=
                g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }
    }
    return out;
}

/// Product of all unitaries; barriers and virtual gates are identities.
inline Matrix unitary(const disq::Circuit& c) {
    const std::size_t n = c.num_qubits();
    Matrix u = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
    for (const auto& ins : c) {
        if (ins.kind == disq::GateKind::Barrier || ins.kind == disq::GateKind::VirtualGate) continue;
        if (!ins.is_unitary() || ins.condition) throw std::invalid_argument("circuit is not purely unitary");
        u = embed(gate_matrix(ins.kind, ins.params), ins.qubits, n) * u;
    }
    return u;
}

/// |U|0..0>|^2 over basis states.
inline std::vector<double> probabilities(const disq::Circuit& c) {
    const Matrix u = unitary(c);
    std::vector<double> p(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index r = 0; r < u.rows(); ++r) p[static_cast<std::size_t>(r)] = std::norm(u(r, 0));
    return p;
}

/// Final state of a unitary circuit from |0..0>, one gate at a time.
inline Vector final_state(const disq::Circuit& c) {
    const std::size_t n = c.num_qubits();
    const std::size_t dim = std::size_t{1} << n;
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
    psi(0) = 1;
    for (const auto& ins : c) {
        if (ins.kind == disq::GateKind::Barrier || ins.kind == disq::GateKind::VirtualGate ||
            ins.kind == disq::GateKind::Measure) {
            continue;
        }
        if (!ins.is_unitary() || ins.condition) throw std::invalid_argument("circuit is not purely unitary");
        const Matrix g = gate_matrix(ins.kind, ins.params);
        const std::size_t k = ins.qubits.size();
        Vector out = Vector::Zero(psi.size());
        for (std::size_t x = 0; x < dim; ++x) {
            if (psi(static_cast<Eigen::Index>(x)) == C(0)) continue;
            std::size_t col = 0, rest = x;
            for (std::size_t j = 0; j < k; ++j) {
                col = col << 1 | (x >> ins.qubits[j] & 1);
                rest &= ~(std::size_t{1} << ins.qubits[j]);
            }
            for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
                std::size_t y = rest;
                for (std::size_t j = 0; j < k; ++j) {
                    if (row >> (k - 1 - j) & 1) y |= std::size_t{1} << ins.qubits[j];
                }
                out(static_cast<Eigen::Index>(y)) += g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
                                                     psi(static_cast<Eigen::Index>(x));
            }
        }
        psi = std::move(out);
    }
    return psi;
}

/// Outcome probabilities when qubit i is measured into clbit i; measurements
/// must all come at the end.
inline std::map<std::uint64_t, double> terminal_distribution(const disq::Circuit& c) {
    const Vector psi = final_state(c);
    std::map<std::uint64_t, double> d;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        const double p = std::norm(psi(x));
        if (p > 1e-16) d[static_cast<std::uint64_t>(x)] += p;
    }
    return d;
}

/// a = e^{i phi} b for some phi, entrywise within tol.
inline bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    Eigen::Index r = 0, col = 0;
    b.cwiseAbs().maxCoeff(&r, &col);
    if (std::abs(b(r, col)) < 1e-12) return a.cwiseAbs().maxCoeff() <= tol;
    const C phase = a(r, col) / b(r, col);
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

/// Permutation matrix sending logical qubit v to physical qubit perm[v]
/// (qubits outside the map stay idle in |0>, so only the embedded block is
/// returned as a dim(phys) x dim(logical) isometry).
inline Matrix placement(const std::vector<disq::Qubit>& perm, std::size_t n_logical, std::size_t n_physical) {
    const std::size_t dl = std::size_t{1} << n_logical, dp = std::size_t{1} << n_physical;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dp), static_cast<Eigen::Index>(dl));
    for (std::size_t x = 0; x < dl; ++x) {
        std::size_t y = 0;
        for (std::size_t v = 0; v < n_logical; ++v) {
            if (x >> v & 1) y |= std::size_t{1} << perm[v];
        }
        m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1;
    }
    return m;
}

}  // namespace oracle

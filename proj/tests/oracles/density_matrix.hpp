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

// Brute-force mixed-state evolution for small registers. The classical
// register is tracked explicitly: each clbit assignment owns an unnormalized
// density matrix, so mid-circuit measurement and conditioning are exact.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "dense.hpp"
#include "disq/noise.hpp"

namespace oracle {

using DmDistribution = std::map<std::uint64_t, double>;

class DensityMatrix {
public:
    explicit DensityMatrix(std::size_t n) : n_(n) {
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
        Matrix rho = Matrix::Zero(dim, dim);
        rho(0, 0) = 1;
        reg_[0] = rho;
    }

    void run(const disq::Circuit& c, const std::vector<disq::ErrorChannel>& channels) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            const disq::ErrorChannel ch = i < channels.size() ? channels[i] : disq::ErrorChannel{};
            step(c[i], ch);
        }
    }

    /// Probability of each value of clbits [0, num_out).
    [[nodiscard]] DmDistribution distribution(std::size_t num_out) const {
        DmDistribution d;
        const std::uint64_t mask = num_out >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_out) - 1;
        for (const auto& [key, rho] : reg_) {
            const double p = rho.trace().real();
            if (p > 1e-15) d[key & mask] += p;
        }
        return d;
    }

private:
    void step(const disq::Instruction& ins, const disq::ErrorChannel& ch) {
        using disq::GateKind;
        if (ins.kind == GateKind::Barrier || ins.kind == GateKind::VirtualGate) return;
        std::map<std::uint64_t, Matrix> next;
        for (auto& [key, rho] : reg_) {
            if (ins.kind == GateKind::Measure) {
                measure(ins.qubits[0], ins.clbits[0], key, rho, ch, next);
            } else if (ins.kind == GateKind::Reset) {
                reset(ins.qubits[0], key, rho, ch, next);
            } else {
                Matrix out = rho;
                const bool fire = !ins.condition || static_cast<int>(key >> ins.condition->clbit & 1) ==
                                                        ins.condition->value;
                if (fire) {
                    const Matrix u = embed(gate_matrix(ins.kind, ins.params), ins.qubits, n_);
                    out = u * rho * u.adjoint();
                    out = depolarize(out, ins.qubits, ch);
                }
                add(next, key, out);
            }
        }
        reg_ = std::move(next);
    }

    static void add(std::map<std::uint64_t, Matrix>& m, std::uint64_t key, const Matrix& rho) {
        auto it = m.find(key);
        if (it == m.end()) {
            m.emplace(key, rho);
        } else {
            it->second += rho;
        }
    }

    [[nodiscard]] Matrix projector(disq::Qubit q, int v) const {
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_);
        Matrix p = Matrix::Zero(dim, dim);
        for (Eigen::Index x = 0; x < dim; ++x) {
            if (static_cast<int>(x >> q & 1) == v) p(x, x) = 1;
        }
        return p;
    }

    /// With probability p, a uniformly chosen non-identity Pauli string.
    [[nodiscard]] Matrix depolarize(const Matrix& rho, const std::vector<disq::Qubit>& qs,
                                    const disq::ErrorChannel& ch) const {
        using disq::ChannelKind;
        if (ch.kind != ChannelKind::Depolarizing1 && ch.kind != ChannelKind::Depolarizing2 &&
            ch.kind != ChannelKind::EprDepolarizing) {
            return rho;
        }
        const std::size_t k = qs.size();
        const std::size_t strings = (std::size_t{1} << (2 * k)) - 1;
        Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
        for (std::size_t s = 1; s <= strings; ++s) {
            Matrix pk = Matrix::Identity(1, 1);
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t code = s >> (2 * (k - 1 - j)) & 3;
                pk = Eigen::kroneckerProduct(pk, pauli(code)).eval();
            }
            const Matrix full = embed(pk, qs, n_);
            acc += full * rho * full.adjoint();
        }
        return (1.0 - ch.p) * rho + (ch.p / static_cast<double>(strings)) * acc;
    }

    static Matrix pauli(std::size_t code) {
        switch (code) {
            case 0: return Matrix::Identity(2, 2);
            case 1: return gate_matrix(disq::GateKind::X, {});
            case 2: return gate_matrix(disq::GateKind::Y, {});
            default: return gate_matrix(disq::GateKind::Z, {});
        }
    }

    void measure(disq::Qubit q, disq::Clbit c, std::uint64_t key, const Matrix& rho, const disq::ErrorChannel& ch,
                 std::map<std::uint64_t, Matrix>& next) const {
        const double flip = ch.kind == disq::ChannelKind::ReadoutFlip ? ch.p : 0.0;
        for (int v = 0; v < 2; ++v) {
            const Matrix p = projector(q, v);
            const Matrix post = p * rho * p;
            if (post.trace().real() < 1e-300) continue;
            const std::uint64_t cleared = key & ~(std::uint64_t{1} << c);
            const std::uint64_t right = cleared | (static_cast<std::uint64_t>(v) << c);
            const std::uint64_t wrong = cleared | (static_cast<std::uint64_t>(1 - v) << c);
            if (flip < 1.0) add(next, right, (1.0 - flip) * post);
            if (flip > 0.0) add(next, wrong, flip * post);
        }
    }

    void reset(disq::Qubit q, std::uint64_t key, const Matrix& rho, const disq::ErrorChannel& ch,
               std::map<std::uint64_t, Matrix>& next) const {
        const double fail = ch.kind == disq::ChannelKind::ResetFailure ? ch.p : 0.0;
        // |0><0| keeps, |0><1| moves the 1 branch onto 0.
        const Matrix p0 = projector(q, 0);
        const Matrix lower = embed(mat2(0, 1, 0, 0), {q}, n_);
        const Matrix done = p0 * rho * p0 + lower * rho * lower.adjoint();
        add(next, key, (1.0 - fail) * done + fail * rho);
    }

    std::size_t n_;
    std::map<std::uint64_t, Matrix> reg_;
};

inline DmDistribution density_distribution(const disq::Circuit& c, const std::vector<disq::ErrorChannel>& channels,
                                           std::size_t num_out) {
    if (c.num_qubits() > 6) throw std::invalid_argument("density oracle is for small registers");
    DensityMatrix dm(c.num_qubits());
    dm.run(c, channels);
    return dm.distribution(num_out);
}

}  // namespace oracle

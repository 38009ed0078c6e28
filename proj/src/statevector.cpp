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

#include "disq/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disq/error.hpp"

namespace disq {

namespace {

constexpr double k_zero = 1e-14;
// Squared amplitude below which a basis state counts as absent when
// deciding whether a qubit has become definite.
constexpr double k_release = 1e-24;

bool is_zero(Complex c) { return std::abs(c.real()) < k_zero && std::abs(c.imag()) < k_zero; }

/// Inserts a zero bit at position pos.
inline std::size_t insert_zero(std::size_t i, std::size_t pos) {
    const std::size_t low = i & ((std::size_t{1} << pos) - 1);
    return ((i >> pos) << (pos + 1)) | low;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::size_t qubit_limit)
    : limit_(qubit_limit), slot_of_(num_qubits, -1), value_(num_qubits, 0), amp_{Complex{1.0, 0.0}} {}

void StateVector::allocate(Qubit q) {
    if (qubit_of_slot_.size() >= limit_) {
        throw CapacityError("statevector needs more than " + std::to_string(limit_) +
                            " simultaneously entangled qubits");
    }
    const std::size_t half = amp_.size();
    amp_.resize(half * 2, Complex{});
    if (value_[q]) {
        std::copy(amp_.begin(), amp_.begin() + static_cast<std::ptrdiff_t>(half),
                  amp_.begin() + static_cast<std::ptrdiff_t>(half));
        std::fill(amp_.begin(), amp_.begin() + static_cast<std::ptrdiff_t>(half), Complex{});
    }
    slot_of_[q] = static_cast<int>(qubit_of_slot_.size());
    qubit_of_slot_.push_back(q);
    value_[q] = 0;
}

void StateVector::kernel_1q(std::size_t slot, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << slot;
    const std::size_t size = amp_.size();
    Complex* a = amp_.data();
    if (is_zero(m[1]) && is_zero(m[2])) {
        for (std::size_t base = 0; base < size; base += 2 * bit) {
            for (std::size_t i0 = base; i0 < base + bit; ++i0) {
                a[i0] *= m[0];
                a[i0 | bit] *= m[3];
            }
        }
        return;
    }
    if (is_zero(m[0]) && is_zero(m[3])) {
        for (std::size_t base = 0; base < size; base += 2 * bit) {
            for (std::size_t i0 = base; i0 < base + bit; ++i0) {
                const Complex x = a[i0], y = a[i0 | bit];
                a[i0] = m[1] * y;
                a[i0 | bit] = m[2] * x;
            }
        }
        return;
    }
    for (std::size_t base = 0; base < size; base += 2 * bit) {
        for (std::size_t i0 = base; i0 < base + bit; ++i0) {
            const Complex x = a[i0], y = a[i0 | bit];
            a[i0] = m[0] * x + m[1] * y;
            a[i0 | bit] = m[2] * x + m[3] * y;
        }
    }
}

void StateVector::kernel_2q(std::size_t s0, std::size_t s1, const Mat4& m) {
    const std::size_t b0 = std::size_t{1} << s0, b1 = std::size_t{1} << s1;
    const std::size_t blo = std::min(b0, b1), bhi = std::max(b0, b1);
    const std::size_t size = amp_.size();
    Complex* a = amp_.data();

    // Monomial matrices (one entry per column) are a permutation with phases.
    int row_of[4];
    bool monomial = true, unit = true;
    for (int c = 0; c < 4 && monomial; ++c) {
        int found = -1;
        for (int r = 0; r < 4; ++r) {
            if (is_zero(m[static_cast<std::size_t>(r * 4 + c)])) continue;
            if (found >= 0) {
                monomial = false;
                break;
            }
            found = r;
        }
        row_of[c] = found;
        monomial = monomial && found >= 0;
        if (monomial) unit = unit && is_zero(m[static_cast<std::size_t>(found * 4 + c)] - Complex{1.0, 0.0});
    }
    // A unit permutation that fixes |00> and |01> and swaps |10>, |11> (CX).
    const bool cx = monomial && unit && row_of[0] == 0 && row_of[1] == 1 && row_of[2] == 3 && row_of[3] == 2;

    auto for_each_base = [&](auto&& body) {
        for (std::size_t i = 0; i < size; i += 2 * bhi) {
            for (std::size_t j = i; j < i + bhi; j += 2 * blo) {
                for (std::size_t k = j; k < j + blo; ++k) body(k);
            }
        }
    };
    if (cx) {
        for_each_base([&](std::size_t base) { std::swap(a[base | b0], a[base | b0 | b1]); });
        return;
    }
    for_each_base([&](std::size_t base) {
        const std::size_t idx[4] = {base, base | b1, base | b0, base | b0 | b1};
        Complex v[4];
        for (int k = 0; k < 4; ++k) v[k] = a[idx[k]];
        if (monomial) {
            for (int c = 0; c < 4; ++c) a[idx[row_of[c]]] = m[static_cast<std::size_t>(row_of[c] * 4 + c)] * v[c];
        } else {
            for (int r = 0; r < 4; ++r) {
                const Complex* row = &m[static_cast<std::size_t>(r * 4)];
                a[idx[r]] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
            }
        }
    });
}

void StateVector::apply_1q(Qubit q, const Mat2& m) {
    if (!is_allocated(q)) {
        if (is_zero(m[1]) && is_zero(m[2])) return;  // a phase on a definite value
        if (is_zero(m[0]) && is_zero(m[3])) {
            value_[q] ^= 1;
            return;
        }
        allocate(q);
    }
    kernel_1q(static_cast<std::size_t>(slot_of_[q]), m);
    // Diagonal and antidiagonal gates keep the weights of |0> and |1>.
    const bool keeps_weights = (is_zero(m[1]) && is_zero(m[2])) || (is_zero(m[0]) && is_zero(m[3]));
    if (!keeps_weights) release_if_definite(q);
}

void StateVector::apply_2q(Qubit a, Qubit b, const Mat4& m) {
    const bool ca = !is_allocated(a), cb = !is_allocated(b);
    if (ca && cb) {
        const int col = 2 * value_[a] + value_[b];
        int row = -1, nonzero = 0;
        for (int r = 0; r < 4; ++r) {
            if (!is_zero(m[static_cast<std::size_t>(r * 4 + col)])) {
                row = r;
                ++nonzero;
            }
        }
        if (nonzero == 1) {
            value_[a] = static_cast<std::uint8_t>(row >> 1);
            value_[b] = static_cast<std::uint8_t>(row & 1);
            return;
        }
    } else if (ca || cb) {
        // One operand is definite: if the gate leaves it definite, act on the
        // other operand with the corresponding 2x2 block.
        const bool first_fixed = ca;
        const int v = first_fixed ? value_[a] : value_[b];
        int out = -1;
        bool reducible = true;
        for (int j = 0; j < 2 && reducible; ++j) {
            const int col = first_fixed ? 2 * v + j : 2 * j + v;
            for (int r = 0; r < 4; ++r) {
                if (is_zero(m[static_cast<std::size_t>(r * 4 + col)])) continue;
                const int w = first_fixed ? (r >> 1) : (r & 1);
                if (out < 0) out = w;
                if (w != out) {
                    reducible = false;
                    break;
                }
            }
        }
        if (reducible && out >= 0) {
            Mat2 block{};
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const int row = first_fixed ? 2 * out + i : 2 * i + out;
                    const int col = first_fixed ? 2 * v + j : 2 * j + v;
                    block[static_cast<std::size_t>(i * 2 + j)] = m[static_cast<std::size_t>(row * 4 + col)];
                }
            }
            const Qubit fixed = first_fixed ? a : b;
            const Qubit free = first_fixed ? b : a;
            value_[fixed] = static_cast<std::uint8_t>(out);
            kernel_1q(static_cast<std::size_t>(slot_of_[free]), block);
            return;
        }
    }
    if (!is_allocated(a)) allocate(a);
    if (!is_allocated(b)) allocate(b);
    kernel_2q(static_cast<std::size_t>(slot_of_[a]), static_cast<std::size_t>(slot_of_[b]), m);
    release_if_definite(a);
    release_if_definite(b);
}

void StateVector::release_if_definite(Qubit q) {
    if (!is_allocated(q)) return;
    const std::size_t bit = std::size_t{1} << slot_of_[q];
    // Stops at the first pair of non-negligible amplitudes on both sides.
    bool any0 = false, any1 = false;
    for (std::size_t base = 0; base < amp_.size() && !(any0 && any1); base += 2 * bit) {
        for (std::size_t i0 = base; i0 < base + bit; ++i0) {
            any0 = any0 || std::norm(amp_[i0]) > k_release;
            any1 = any1 || std::norm(amp_[i0 | bit]) > k_release;
            if (any0 && any1) break;
        }
    }
    if (!any1) {
        collapse(q, 0);
    } else if (!any0) {
        collapse(q, 1);
    }
}

void StateVector::apply_swap(Qubit a, Qubit b) {
    std::swap(slot_of_[a], slot_of_[b]);
    std::swap(value_[a], value_[b]);
    if (slot_of_[a] >= 0) qubit_of_slot_[static_cast<std::size_t>(slot_of_[a])] = a;
    if (slot_of_[b] >= 0) qubit_of_slot_[static_cast<std::size_t>(slot_of_[b])] = b;
}

void StateVector::apply(const Instruction& ins) {
    if (ins.kind == GateKind::SWAP) {
        apply_swap(ins.qubits[0], ins.qubits[1]);
    } else if (is_single_qubit_unitary(ins.kind)) {
        apply_1q(ins.qubits[0], matrix_1q(ins.kind, ins.params));
    } else if (is_two_qubit_unitary(ins.kind)) {
        apply_2q(ins.qubits[0], ins.qubits[1], matrix_2q(ins.kind, ins.params));
    } else {
        throw InternalError("StateVector::apply on non-unitary " + std::string(gate_name(ins.kind)));
    }
}

void StateVector::apply_pauli(Qubit q, int pauli) {
    static const std::vector<double> none;
    switch (pauli) {
        case 1: apply_1q(q, matrix_1q(GateKind::X, none)); break;
        case 2: apply_1q(q, matrix_1q(GateKind::Y, none)); break;
        case 3: apply_1q(q, matrix_1q(GateKind::Z, none)); break;
        default: break;
    }
}

double StateVector::probability_one(Qubit q) const {
    if (!is_allocated(q)) return value_[q];
    const std::size_t slot = static_cast<std::size_t>(slot_of_[q]);
    const std::size_t bit = std::size_t{1} << slot;
    const std::size_t n = amp_.size() / 2;
    double p = 0.0;
    for (std::size_t j = 0; j < n; ++j) p += std::norm(amp_[insert_zero(j, slot) | bit]);
    return p;
}

void StateVector::collapse(Qubit q, int outcome) {
    if (!is_allocated(q)) {
        if (value_[q] != outcome) throw InternalError("collapse onto an impossible outcome");
        return;
    }
    const std::size_t slot = static_cast<std::size_t>(slot_of_[q]);
    const std::size_t bit = outcome ? (std::size_t{1} << slot) : 0;
    const std::size_t n = amp_.size() / 2;
    std::vector<Complex> out(n);
    double p = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = amp_[insert_zero(j, slot) | bit];
        p += std::norm(out[j]);
    }
    if (p <= 0.0) throw InternalError("collapse onto a zero-probability outcome");
    const double scale = 1.0 / std::sqrt(p);
    for (auto& x : out) x *= scale;
    amp_ = std::move(out);
    qubit_of_slot_.erase(qubit_of_slot_.begin() + static_cast<std::ptrdiff_t>(slot));
    for (std::size_t s = slot; s < qubit_of_slot_.size(); ++s) slot_of_[qubit_of_slot_[s]] = static_cast<int>(s);
    slot_of_[q] = -1;
    value_[q] = static_cast<std::uint8_t>(outcome);
}

void StateVector::set_zero(Qubit q) {
    if (is_allocated(q)) throw InternalError("set_zero on a qubit still in superposition");
    value_[q] = 0;
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& x : amp_) s += std::norm(x);
    return s;
}

bool StateVector::same_state(const StateVector& o, double tol) const {
    if (qubit_of_slot_ != o.qubit_of_slot_ || value_ != o.value_) return false;
    std::size_t k = 0;
    for (std::size_t i = 1; i < amp_.size(); ++i) {
        if (std::norm(amp_[i]) > std::norm(amp_[k])) k = i;
    }
    if (std::norm(o.amp_[k]) < 1e-30) return false;
    const Complex phase = amp_[k] / o.amp_[k];
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (std::abs(amp_[i] - phase * o.amp_[i]) > tol) return false;
    }
    return true;
}

std::vector<Complex> StateVector::dense() const {
    const std::size_t n = num_qubits();
    if (n > 24) throw CapacityError("dense() is limited to 24 qubits");
    std::vector<Complex> out(std::size_t{1} << n, Complex{});
    std::size_t fixed = 0;
    for (Qubit q = 0; q < n; ++q) {
        if (!is_allocated(q) && value_[q]) fixed |= std::size_t{1} << q;
    }
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        std::size_t full = fixed;
        for (std::size_t s = 0; s < qubit_of_slot_.size(); ++s) {
            if (i >> s & 1) full |= std::size_t{1} << qubit_of_slot_[s];
        }
        out[full] = amp_[i];
    }
    return out;
}

}  // namespace disq

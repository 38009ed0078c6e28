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

#include "disq/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "disq/error.hpp"
#include "disq/simulator.hpp"

namespace disq {

namespace {

void measure_all(Circuit& c) {
    for (Qubit q = 0; q < c.num_qubits(); ++q) c.append(make_measure(q, q));
}

void gate(Circuit& c, GateKind k, std::vector<Qubit> qs, std::vector<double> params = {}) {
    Instruction ins;
    ins.kind = k;
    ins.qubits = std::move(qs);
    ins.params = std::move(params);
    c.append(std::move(ins));
}

void toffoli(Circuit& c, Qubit c1, Qubit c2, Qubit t) {
    gate(c, GateKind::H, {t});
    gate(c, GateKind::CX, {c2, t});
    gate(c, GateKind::Tdg, {t});
    gate(c, GateKind::CX, {c1, t});
    gate(c, GateKind::T, {t});
    gate(c, GateKind::CX, {c2, t});
    gate(c, GateKind::Tdg, {t});
    gate(c, GateKind::CX, {c1, t});
    gate(c, GateKind::T, {c2});
    gate(c, GateKind::T, {t});
    gate(c, GateKind::H, {t});
    gate(c, GateKind::CX, {c1, c2});
    gate(c, GateKind::T, {c1});
    gate(c, GateKind::Tdg, {c2});
    gate(c, GateKind::CX, {c1, c2});
}

void maj(Circuit& c, Qubit x, Qubit y, Qubit z) {
    gate(c, GateKind::CX, {z, y});
    gate(c, GateKind::CX, {z, x});
    toffoli(c, x, y, z);
}

void uma(Circuit& c, Qubit x, Qubit y, Qubit z) {
    toffoli(c, x, y, z);
    gate(c, GateKind::CX, {z, x});
    gate(c, GateKind::CX, {x, y});
}

Circuit ghz(std::size_t n) {
    if (n < 2) throw InputError("ghz needs at least 2 qubits");
    Circuit c(n, n);
    gate(c, GateKind::H, {0});
    for (Qubit q = 0; q + 1 < n; ++q) gate(c, GateKind::CX, {q, q + 1});
    measure_all(c);
    return c;
}

// Ripple-carry adder on k-bit registers, layout c0, b0, a0, b1, a1, ..., z.
// Inputs a = 1, b = 1, carry-in = 1; b receives the sum.
Circuit fulladder(std::size_t n) {
    if (n < 4 || n % 2 != 0) throw InputError("fulladder needs an even qubit count of at least 4");
    const std::size_t k = (n - 2) / 2;
    auto b = [](std::size_t i) { return static_cast<Qubit>(1 + 2 * i); };
    auto a = [](std::size_t i) { return static_cast<Qubit>(2 + 2 * i); };
    const Qubit cin = 0, z = static_cast<Qubit>(n - 1);
    Circuit c(n, n);
    gate(c, GateKind::X, {cin});
    gate(c, GateKind::X, {b(0)});
    gate(c, GateKind::X, {a(0)});
    maj(c, cin, b(0), a(0));
    for (std::size_t i = 1; i < k; ++i) maj(c, a(i - 1), b(i), a(i));
    gate(c, GateKind::CX, {a(k - 1), z});
    for (std::size_t i = k - 1; i >= 1; --i) uma(c, a(i - 1), b(i), a(i));
    uma(c, cin, b(0), a(0));
    measure_all(c);
    return c;
}

// Steane code: encode |0_L> on qubits 0..6, then one round of syndrome
// extraction with Z-type ancillas 7..9 and X-type ancillas 10..12.
Circuit qec_steane(std::size_t n) {
    if (n != 13) throw InputError("qec-steane is defined on 13 qubits only");
    Circuit c(13, 13);
    gate(c, GateKind::CX, {2, 4});
    gate(c, GateKind::CX, {2, 5});
    const Qubit heads[] = {3, 1, 0};
    const std::vector<Qubit> fan[] = {{4, 5, 6}, {2, 5, 6}, {2, 4, 6}};
    for (int i = 0; i < 3; ++i) {
        gate(c, GateKind::H, {heads[i]});
        for (Qubit t : fan[i]) gate(c, GateKind::CX, {heads[i], t});
    }
    const std::vector<Qubit> supports[] = {{3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}};
    for (int s = 0; s < 3; ++s) {
        const Qubit anc = static_cast<Qubit>(7 + s);
        for (Qubit d : supports[s]) gate(c, GateKind::CX, {d, anc});
    }
    for (int s = 0; s < 3; ++s) {
        const Qubit anc = static_cast<Qubit>(10 + s);
        gate(c, GateKind::H, {anc});
        for (Qubit d : supports[s]) gate(c, GateKind::CX, {anc, d});
        gate(c, GateKind::H, {anc});
    }
    measure_all(c);
    return c;
}

Circuit tfim(std::size_t n, std::size_t steps) {
    if (n < 2 || steps == 0) throw InputError("tfim needs at least 2 qubits and 1 step");
    Circuit c(n, n);
    for (std::size_t s = 0; s < steps; ++s) {
        for (Qubit q = 0; q + 1 < n; ++q) gate(c, GateKind::RZZ, {q, q + 1}, {bench_params::tfim_zz});
        for (Qubit q = 0; q < n; ++q) gate(c, GateKind::RX, {q}, {bench_params::tfim_x});
    }
    measure_all(c);
    return c;
}

Circuit qaoa(std::size_t n, std::size_t p) {
    if (n < 2 || p == 0 || p > std::size(bench_params::qaoa_gamma)) {
        throw InputError("qaoa needs at least 2 qubits and 1 to 2 layers");
    }
    Circuit c(n, n);
    for (Qubit q = 0; q < n; ++q) gate(c, GateKind::H, {q});
    for (std::size_t l = 0; l < p; ++l) {
        for (Qubit i = 0; i < n; ++i) {
            for (Qubit j = i + 1; j < n; ++j) gate(c, GateKind::RZZ, {i, j}, {2 * bench_params::qaoa_gamma[l]});
        }
        for (Qubit q = 0; q < n; ++q) gate(c, GateKind::RX, {q}, {2 * bench_params::qaoa_beta[l]});
    }
    measure_all(c);
    return c;
}

// Hardware-efficient ansatz: RY/RZ rotation layers around CX ladders.
Circuit vqe(std::size_t n, std::size_t layers, std::uint64_t seed) {
    if (n < 2 || layers == 0) throw InputError("vqe needs at least 2 qubits and 1 layer");
    std::mt19937_64 rng(seed);
    auto angle = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 * std::numbers::pi; };
    Circuit c(n, n);
    auto rotations = [&] {
        for (Qubit q = 0; q < n; ++q) {
            gate(c, GateKind::RY, {q}, {angle()});
            gate(c, GateKind::RZ, {q}, {angle()});
        }
    };
    rotations();
    for (std::size_t l = 0; l < layers; ++l) {
        for (Qubit q = 0; q + 1 < n; ++q) gate(c, GateKind::CX, {q, q + 1});
        rotations();
    }
    measure_all(c);
    return c;
}

}  // namespace

std::vector<std::string> benchmark_names() { return {"qec-steane", "fulladder", "ghz", "tfim", "qaoa", "vqe"}; }

BenchmarkSpec default_benchmark(const std::string& name) {
    if (name == "qec-steane") return {name, 13, 1, 0};
    if (name == "fulladder") return {name, 12, 1, 0};
    if (name == "ghz") return {name, 16, 1, 0};
    if (name == "tfim") return {name, 12, 6, 0};
    if (name == "qaoa") return {name, 8, 2, 0};
    if (name == "vqe") return {name, 10, 1, 2024};
    throw InputError("unknown benchmark \"" + name + "\"");
}

BenchmarkSpec parse_benchmark(const std::string& text) {
    for (const auto& name : benchmark_names()) {
        if (text == name) return default_benchmark(name);
        if (text.size() > name.size() + 1 && text.compare(0, name.size(), name) == 0 && text[name.size()] == '-') {
            const std::string digits = text.substr(name.size() + 1);
            if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4) break;
            BenchmarkSpec b = default_benchmark(name);
            b.num_qubits = std::stoul(digits);
            return b;
        }
    }
    throw InputError("unknown benchmark \"" + text + "\"");
}

Circuit generate(const BenchmarkSpec& b) {
    if (b.name == "ghz") return ghz(b.num_qubits);
    if (b.name == "fulladder") return fulladder(b.num_qubits);
    if (b.name == "qec-steane") return qec_steane(b.num_qubits);
    if (b.name == "tfim") return tfim(b.num_qubits, b.layers);
    if (b.name == "qaoa") return qaoa(b.num_qubits, b.layers);
    if (b.name == "vqe") return vqe(b.num_qubits, b.layers, b.seed);
    throw InputError("unknown benchmark \"" + b.name + "\"");
}

GoldenResult golden(const BenchmarkSpec& b) {
    const Circuit c = generate(b);
    const Distribution d = run_exact(c, c.num_clbits());
    GoldenResult g;
    for (const auto& [k, p] : d) {
        if (p > g.probability + 1e-12) {
            g.state = k;
            g.probability = p;
        }
    }
    g.bitstring = bitstring(g.state, c.num_clbits());
    return g;
}

}  // namespace disq

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
#include <string>
#include <vector>

#include "disq/circuit.hpp"

namespace disq {

/// One benchmark family with its size. Angles are fixed per family; vqe draws
/// its angles from `seed`.
struct BenchmarkSpec {
    std::string name;  // qec-steane, fulladder, ghz, tfim, qaoa, vqe
    std::size_t num_qubits = 0;
    std::size_t layers = 0;  // trotter steps (tfim), p (qaoa), entangling layers (vqe)
    std::uint64_t seed = 0;

    bool operator==(const BenchmarkSpec&) const = default;
};

std::vector<std::string> benchmark_names();

/// Default size for a family; throws InputError for unknown names.
BenchmarkSpec default_benchmark(const std::string& name);

/// Accepts "ghz" or "ghz-16" (family plus qubit count).
BenchmarkSpec parse_benchmark(const std::string& text);

/// Throws InputError for unsupported sizes.
Circuit generate(const BenchmarkSpec& b);

struct GoldenResult {
    std::uint64_t state = 0;  // key over the output clbits
    std::string bitstring;
    double probability = 0.0;
};

/// Most likely outcome of the noise-free circuit; ties go to the smaller key.
GoldenResult golden(const BenchmarkSpec& b);

/// Angles used by the fixed-parameter families, exposed for tests.
namespace bench_params {
inline constexpr double tfim_zz = 0.4;  // 2 J dt with J = 1, dt = 0.2
inline constexpr double tfim_x = 0.4;   // 2 h dt with h = 1
inline constexpr double qaoa_gamma[] = {0.4, 0.8};
inline constexpr double qaoa_beta[] = {0.6, 0.3};
}  // namespace bench_params

}  // namespace disq

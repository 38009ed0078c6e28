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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "disq/benchmarks.hpp"
#include "disq/pipeline.hpp"

namespace py = pybind11;
using namespace disq;

namespace {

Circuit load_input(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_circuit_file(arg);
    return generate(parse_benchmark(arg));
}

PipelineOptions options(bool exact, std::size_t shots, std::uint64_t seed, double kappa,
                        std::optional<double> distance_km, int opt_level, bool noise_free,
                        const std::string& metric) {
    PipelineOptions o;
    o.exact = exact;
    o.shots = shots;
    o.seed = seed;
    o.kappa = kappa;
    o.distance_km = distance_km;
    o.opt_level = opt_level;
    o.noise_free = noise_free;
    o.metric = fidelity_metric_from_name(metric);
    return o;
}

Circuit circuit_arg(const std::string& circuit, const std::string& qasm) {
    if (!qasm.empty()) return parse_circuit(qasm, CircuitFormat::Qasm2);
    return load_input(circuit);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Distributed quantum circuit compiler and noisy simulator (JSON-string core).";

    // Category-preserving exceptions; the Python package re-exports these.
    static py::exception<Error> error(m, "Error");
    static py::exception<InputError> input_error(m, "InputError", error.ptr());
    static py::exception<CapacityError> capacity_error(m, "CapacityError", error.ptr());
    static py::exception<InternalError> internal_error(m, "InternalError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.category()) {
                case ErrorCategory::Input: PyErr_SetString(input_error.ptr(), e.what()); break;
                case ErrorCategory::Capacity: PyErr_SetString(capacity_error.ptr(), e.what()); break;
                case ErrorCategory::Internal: PyErr_SetString(internal_error.ptr(), e.what()); break;
            }
        }
    });

    m.def("benchmark_names", &benchmark_names);
    m.def("preset_names", &preset_names);
    m.def("generate_qasm", [](const std::string& name) { return to_qasm(generate(parse_benchmark(name))); },
          py::arg("name"));
    m.def("golden", [](const std::string& name) {
        const GoldenResult g = golden(parse_benchmark(name));
        return py::make_tuple(g.bitstring, g.probability);
    }, py::arg("name"));
    m.def("architecture_json", [](const std::string& path_or_preset) {
        const ArchitectureSpec a = load_architecture(path_or_preset);
        validate_architecture(a);
        return serialize_architecture(a);
    }, py::arg("arch"));

    m.def("run", [](const std::string& circuit, const std::string& qasm, const std::string& arch, bool exact,
                    std::size_t shots, std::uint64_t seed, double kappa, std::optional<double> distance_km,
                    int opt_level, bool noise_free, const std::string& metric) {
        const PipelineOptions o = options(exact, shots, seed, kappa, distance_km, opt_level, noise_free, metric);
        const Circuit c = circuit_arg(circuit, qasm);
        const ArchitectureSpec a = load_architecture(arch);
        py::gil_scoped_release nogil;
        return report_to_json(run_pipeline(c, a, o)).dump();
    }, py::arg("circuit"), py::arg("qasm"), py::arg("arch"), py::arg("exact"), py::arg("shots"), py::arg("seed"),
       py::arg("kappa"), py::arg("distance_km"), py::arg("opt_level"), py::arg("noise_free"), py::arg("metric"));

    m.def("stage", [](const std::string& circuit, const std::string& qasm, const std::string& arch,
                      const std::string& stage, double kappa, std::optional<double> distance_km, int opt_level,
                      bool noise_free) {
        const PipelineOptions o = options(false, 0, 1, kappa, distance_km, opt_level, noise_free, "bhattacharyya");
        PipelineState s = start_pipeline(circuit_arg(circuit, qasm), load_architecture(arch), o);
        advance(s, stage_from_name(stage));
        return stage_to_json(s).dump();
    }, py::arg("circuit"), py::arg("qasm"), py::arg("arch"), py::arg("stage"), py::arg("kappa"),
       py::arg("distance_km"), py::arg("opt_level"), py::arg("noise_free"));

    m.def("resume", [](const std::string& artifact, bool exact, std::size_t shots, std::uint64_t seed,
                       const std::string& metric) {
        const PipelineOptions o = options(exact, shots, seed, 1.0, std::nullopt, 1, false, metric);
        PipelineState s = stage_from_json(parse_json_text(artifact));
        advance(s, Stage::NoiseSpec);
        py::gil_scoped_release nogil;
        return report_to_json(simulate(s, o)).dump();
    }, py::arg("artifact"), py::arg("exact"), py::arg("shots"), py::arg("seed"), py::arg("metric"));

    m.def("matrix", [](const std::vector<std::string>& benchmarks, const std::vector<std::string>& archs,
                       const std::vector<double>& distances, bool exact, std::size_t shots, std::uint64_t seed,
                       double kappa, int opt_level, bool noise_free, const std::string& metric,
                       std::size_t threads) {
        const PipelineOptions o = options(exact, shots, seed, kappa, std::nullopt, opt_level, noise_free, metric);
        py::gil_scoped_release nogil;
        return matrix_to_json(run_matrix(benchmarks, archs, distances, o, threads)).dump();
    }, py::arg("benchmarks"), py::arg("archs"), py::arg("distances"), py::arg("exact"), py::arg("shots"),
       py::arg("seed"), py::arg("kappa"), py::arg("opt_level"), py::arg("noise_free"), py::arg("metric"),
       py::arg("threads"));
}

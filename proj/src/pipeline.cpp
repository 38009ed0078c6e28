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

#include "disq/pipeline.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "disq/benchmarks.hpp"
#include "disq/metrics.hpp"

namespace disq {

namespace {

constexpr std::array<std::string_view, 6> k_stage_names = {"dqc-logical", "isolated", "transpiled",
                                                           "assembled",   "trace",    "noisespec"};

template <typename F>
void run_stage(Stage s, F&& f) {
    try {
        f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(e.category(), std::string(stage_name(s)), e.what());
    } catch (const std::exception& e) {
        throw StageError(ErrorCategory::Internal, std::string(stage_name(s)), e.what());
    }
}

Json trace_json(AssembledCircuit a) {
    Json out = Json::array();
    std::istringstream lines(trace_to_jsonl(derive_trace(a)));
    for (std::string line; std::getline(lines, line);) out.push_back(parse_json_text(line));
    return out;
}

std::pair<std::uint64_t, double> top_of(const Distribution& d) {
    std::pair<std::uint64_t, double> best{0, 0.0};
    for (const auto& [k, p] : d) {
        if (p > best.second + 1e-12) best = {k, p};
    }
    return best;
}

Json distribution_json(const Distribution& d, std::size_t bits) {
    Json j = Json::object();
    for (const auto& [k, p] : d) j[bitstring(k, bits)] = p;
    return j;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string_view stage_name(Stage s) { return k_stage_names[static_cast<std::size_t>(s)]; }

Stage stage_from_name(std::string_view name) {
    for (std::size_t i = 0; i < k_stage_names.size(); ++i) {
        if (k_stage_names[i] == name) return static_cast<Stage>(i);
    }
    throw InputError("unknown stage \"" + std::string(name) + "\"");
}

std::string_view fidelity_metric_name(FidelityMetric m) {
    return m == FidelityMetric::Bhattacharyya ? "bhattacharyya" : "top-ratio";
}

FidelityMetric fidelity_metric_from_name(std::string_view name) {
    if (name == "bhattacharyya") return FidelityMetric::Bhattacharyya;
    if (name == "top-ratio") return FidelityMetric::TopRatio;
    throw InputError("unknown fidelity metric \"" + std::string(name) + "\"");
}

Circuit with_default_measurements(const Circuit& c) {
    for (const auto& ins : c) {
        if (ins.kind == GateKind::Measure) return c;
    }
    Circuit out(c.num_qubits(), std::max<std::size_t>(c.num_clbits(), c.num_qubits()));
    for (const auto& ins : c) out.append(ins);
    for (Qubit q = 0; q < c.num_qubits(); ++q) out.append(make_measure(q, q));
    return out;
}

PipelineState start_pipeline(const Circuit& input, const ArchitectureSpec& arch, const PipelineOptions& opts) {
    PipelineState s;
    s.input = with_default_measurements(input);
    s.arch = arch;
    if (opts.distance_km) s.arch = with_link_length(s.arch, *opts.distance_km);
    if (opts.noise_free) s.arch = with_zero_noise(s.arch);
    validate_architecture(s.arch);
    s.kappa = opts.kappa;
    s.opt_level = opts.opt_level;
    return s;
}

void advance(PipelineState& s, Stage target) {
    auto next = [&](Stage st) { return !s.started ? st == Stage::DqcLogical : st > s.reached; };
    for (std::size_t i = 0; i <= static_cast<std::size_t>(target); ++i) {
        const Stage st = static_cast<Stage>(i);
        if (!next(st)) continue;
        run_stage(st, [&] {
            switch (st) {
                case Stage::DqcLogical: {
                    const PartitionMap pm = s.arch.partition_map ? *s.arch.partition_map
                                                                 : default_partition(s.input, s.arch);
                    validate_partition(pm, s.arch, s.input.num_qubits());
                    s.dqc = construct(s.input, s.arch, pm);
                    break;
                }
                case Stage::Isolated:
                    s.isolation = isolate(*s.dqc, s.arch);
                    break;
                case Stage::Transpiled: {
                    std::vector<TranspiledSubcircuit> out;
                    for (const auto& sub : s.isolation->subcircuits) {
                        out.push_back(transpile(sub, s.arch.qpu(sub.qpu_id), s.opt_level));
                    }
                    s.transpiled = std::move(out);
                    break;
                }
                case Stage::Assembled: {
                    const auto& iso = *s.isolation;
                    s.assembled = assemble(*s.transpiled, iso.sync_table, s.arch, iso.num_data_qubits,
                                           iso.num_clbits, iso.num_output_clbits);
                    break;
                }
                case Stage::Trace:
                    derive_trace(*s.assembled);
                    break;
                case Stage::NoiseSpec:
                    s.noise = build_noise_spec(*s.assembled, s.arch, s.kappa);
                    break;
            }
        });
        s.reached = st;
        s.started = true;
    }
}

Json stage_to_json(const PipelineState& s) {
    if (!s.started) throw InputError("no stage has run yet");
    Json art = Json::object();
    switch (s.reached) {
        case Stage::DqcLogical:
            art["dqc"] = dqc_to_json(*s.dqc);
            break;
        case Stage::Isolated:
            art["isolation"] = isolation_to_json(*s.isolation);
            break;
        case Stage::Transpiled: {
            const auto& iso = *s.isolation;
            Json subs = Json::array();
            for (const auto& t : *s.transpiled) subs.push_back(transpiled_to_json(t));
            art["sync_table"] = sync_table_to_json(iso.sync_table);
            art["num_logical_qubits"] = iso.num_logical_qubits;
            art["num_data_qubits"] = iso.num_data_qubits;
            art["num_clbits"] = iso.num_clbits;
            art["num_output_clbits"] = iso.num_output_clbits;
            art["subcircuits"] = subs;
            break;
        }
        case Stage::Assembled:
            art["assembled"] = assembled_to_json(*s.assembled);
            break;
        case Stage::Trace:
            art["assembled"] = assembled_to_json(*s.assembled);
            art["trace"] = trace_json(*s.assembled);
            break;
        case Stage::NoiseSpec:
            art["assembled"] = assembled_to_json(*s.assembled);
            art["noise"] = noise_spec_to_json(*s.noise);
            break;
    }
    return Json{{"schema", k_schema_version},
                {"stage", stage_name(s.reached)},
                {"architecture", architecture_to_json(s.arch)},
                {"input", circuit_to_json(s.input)},
                {"kappa", s.kappa},
                {"opt_level", s.opt_level},
                {"artifact", art}};
}

PipelineState stage_from_json(const Json& j) {
    try {
        if (j.at("schema").get<int>() != k_schema_version) {
            throw InputError("unsupported stage schema " + j.at("schema").dump());
        }
        PipelineState s;
        s.reached = stage_from_name(j.at("stage").get<std::string>());
        s.started = true;
        s.arch = architecture_from_json(j.at("architecture"));
        validate_architecture(s.arch);
        s.input = circuit_from_json(j.at("input"));
        s.kappa = j.at("kappa").get<double>();
        s.opt_level = j.at("opt_level").get<int>();
        const Json& art = j.at("artifact");
        switch (s.reached) {
            case Stage::DqcLogical:
                s.dqc = dqc_from_json(art.at("dqc"));
                break;
            case Stage::Isolated:
                s.isolation = isolation_from_json(art.at("isolation"));
                break;
            case Stage::Transpiled: {
                IsolationResult iso;
                iso.sync_table = sync_table_from_json(art.at("sync_table"));
                iso.num_logical_qubits = art.at("num_logical_qubits").get<std::size_t>();
                iso.num_data_qubits = art.at("num_data_qubits").get<std::size_t>();
                iso.num_clbits = art.at("num_clbits").get<std::size_t>();
                iso.num_output_clbits = art.at("num_output_clbits").get<std::size_t>();
                s.isolation = std::move(iso);
                std::vector<TranspiledSubcircuit> subs;
                for (const auto& t : art.at("subcircuits")) subs.push_back(transpiled_from_json(t));
                s.transpiled = std::move(subs);
                break;
            }
            case Stage::Assembled:
            case Stage::Trace:
                s.assembled = assembled_from_json(art.at("assembled"));
                break;
            case Stage::NoiseSpec:
                s.assembled = assembled_from_json(art.at("assembled"));
                s.noise = noise_spec_from_json(art.at("noise"));
                if (s.noise->channels.size() != s.assembled->circuit.size()) {
                    throw InputError("noise spec does not match the assembled circuit");
                }
                break;
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("stage artifact: ") + e.what());
    }
}

SimulationReport simulate(const PipelineState& s, const PipelineOptions& opts) {
    if (!s.started || s.reached != Stage::NoiseSpec) throw InternalError("simulate needs the noisespec stage");
    SimulationReport r;
    const AssembledCircuit& a = *s.assembled;
    r.exact = opts.exact;
    r.num_bits = a.num_output_clbits;
    r.metric = opts.metric;
    r.seed = opts.seed;
    run_stage(Stage::NoiseSpec, [&] {
        r.ideal = run_exact(s.input, s.input.num_clbits(), {}, opts.sim);
        if (opts.exact) {
            r.distribution = run_exact(a, opts.sim);
            r.estimate = r.distribution;
        } else {
            r.shots = opts.shots;
            TrajectoryRun run = run_trajectories(a, *s.noise, opts.shots, opts.seed, opts.sim);
            r.distribution = shots_to_distribution(run.shots);
            r.estimate = std::move(run.born);
        }
    });
    std::tie(r.top_state, r.top_prob) = top_of(r.distribution);
    auto score = [&](const Distribution& d) {
        return opts.metric == FidelityMetric::Bhattacharyya ? fidelity(d, r.ideal) : top_ratio_fidelity(d, r.ideal);
    };
    r.fidelity = score(r.estimate);
    r.sampled_fidelity = score(r.distribution);

    const CircuitMetrics in = circuit_metrics(s.input);
    const CircuitMetrics out = circuit_metrics(a.circuit);
    r.metrics.qubits = in.qubits;
    r.metrics.depth = out.depth;
    r.metrics.two_qubit_count = out.two_qubit_count;
    r.metrics.igd = in.igd;
    for (const auto& ins : a.circuit) {
        if (ins.kind == GateKind::CX && is_epr_preparation(ins)) ++r.metrics.epr_pairs_consumed;
    }
    for (Qubit q = 0; q < a.circuit.num_qubits(); ++q) {
        if (a.circuit.role(q) == QubitRole::Communication) ++r.metrics.comm_qubits;
    }
    r.metrics.average_gate_noise = s.noise->average_gate_noise;
    return r;
}

SimulationReport run_pipeline(const Circuit& input, const ArchitectureSpec& arch, const PipelineOptions& opts) {
    PipelineState s = start_pipeline(input, arch, opts);
    advance(s, Stage::NoiseSpec);
    return simulate(s, opts);
}

Json report_to_json(const SimulationReport& r) {
    const auto [ideal_state, ideal_prob] = top_of(r.ideal);
    return Json{{"schema", k_schema_version},
                {"mode", r.exact ? "exact" : "shots"},
                {"shots", r.shots},
                {"seed", r.seed},
                {"top_state", bitstring(r.top_state, r.num_bits)},
                {"top_prob", r.top_prob},
                {"fidelity_metric", fidelity_metric_name(r.metric)},
                {"fidelity", r.fidelity},
                {"infidelity", 1.0 - r.fidelity},
                {"sampled_fidelity", r.sampled_fidelity},
                {"golden", Json{{"state", bitstring(ideal_state, r.num_bits)}, {"probability", ideal_prob}}},
                {"metrics", Json{{"qubits", r.metrics.qubits},
                                 {"depth", r.metrics.depth},
                                 {"two_qubit_count", r.metrics.two_qubit_count},
                                 {"igd", r.metrics.igd},
                                 {"epr_pairs_consumed", r.metrics.epr_pairs_consumed},
                                 {"comm_qubits", r.metrics.comm_qubits},
                                 {"average_gate_noise", r.metrics.average_gate_noise}}},
                {"distribution", distribution_json(r.distribution, r.num_bits)}};
}

std::vector<MatrixCell> run_matrix(const std::vector<std::string>& benchmarks, const std::vector<std::string>& archs,
                                   const std::vector<double>& distances, const PipelineOptions& opts,
                                   std::size_t threads) {
    std::vector<MatrixCell> cells;
    for (const auto& b : benchmarks) {
        for (const auto& a : archs) {
            for (double d : distances) {
                MatrixCell c;
                c.benchmark = b;
                c.arch = a;
                c.distance_km = d;
                c.seed = shot_seed(opts.seed, cells.size());
                cells.push_back(std::move(c));
            }
        }
    }
    auto work = [&](MatrixCell& c) {
        try {
            PipelineOptions o = opts;
            o.seed = c.seed;
            o.distance_km = c.distance_km;
            c.report = run_pipeline(generate(parse_benchmark(c.benchmark)), load_architecture(c.arch), o);
        } catch (const std::exception& e) {
            c.error = e.what();
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cells.size());
    if (threads <= 1) {
        for (auto& c : cells) work(c);
        return cells;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < cells.size();) work(cells[i]);
        });
    }
    for (auto& t : pool) t.join();
    return cells;
}

std::string matrix_to_csv(const std::vector<MatrixCell>& cells) {
    std::string out =
        "benchmark,arch,distance_km,seed,fidelity,infidelity,sampled_fidelity,average_gate_noise,epr_pairs_consumed,depth,"
        "two_qubit_count,comm_qubits,top_state,top_prob,error\n";
    for (const auto& c : cells) {
        out += c.benchmark + "," + c.arch + "," + num(c.distance_km) + "," + std::to_string(c.seed) + ",";
        if (c.report) {
            const auto& r = *c.report;
            out += num(r.fidelity) + "," + num(1.0 - r.fidelity) + "," + num(r.sampled_fidelity) + "," +
                   num(r.metrics.average_gate_noise) + "," +
                   std::to_string(r.metrics.epr_pairs_consumed) + "," + std::to_string(r.metrics.depth) + "," +
                   std::to_string(r.metrics.two_qubit_count) + "," + std::to_string(r.metrics.comm_qubits) + "," +
                   bitstring(r.top_state, r.num_bits) + "," + num(r.top_prob) + ",";
        } else {
            std::string err = c.error;
            for (char& ch : err) {
                if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
            }
            out += ",,,,,,,,,," + err;
        }
        out += "\n";
    }
    return out;
}

Json matrix_to_json(const std::vector<MatrixCell>& cells) {
    Json rows = Json::array();
    for (const auto& c : cells) {
        Json row{{"benchmark", c.benchmark}, {"arch", c.arch}, {"distance_km", c.distance_km}, {"seed", c.seed}};
        if (c.report) {
            const auto& r = *c.report;
            row["fidelity"] = r.fidelity;
            row["infidelity"] = 1.0 - r.fidelity;
            row["sampled_fidelity"] = r.sampled_fidelity;
            row["average_gate_noise"] = r.metrics.average_gate_noise;
            row["epr_pairs_consumed"] = r.metrics.epr_pairs_consumed;
            row["depth"] = r.metrics.depth;
            row["two_qubit_count"] = r.metrics.two_qubit_count;
            row["comm_qubits"] = r.metrics.comm_qubits;
            row["top_state"] = bitstring(r.top_state, r.num_bits);
            row["top_prob"] = r.top_prob;
            row["error"] = nullptr;
        } else {
            row["error"] = c.error;
        }
        rows.push_back(row);
    }
    return Json{{"schema", k_schema_version}, {"cells", rows}};
}

}  // namespace disq

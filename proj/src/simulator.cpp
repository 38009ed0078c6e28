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

#include "disq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <unordered_map>

#include "disq/dag.hpp"
#include "disq/error.hpp"

namespace disq {

namespace {

constexpr double k_certain = 1e-12;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// (position in order, error code). Codes: Pauli index 1..3 for one qubit,
/// 1..15 (4*a + b) for two qubits, 1 for a readout flip or a failed reset.
using Realization = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

/// Sums probability mass per output key; dense for small registers.
class Accumulator {
public:
    explicit Accumulator(std::size_t num_out) : dense_(num_out <= 20) {
        if (dense_) v_.assign(std::size_t{1} << num_out, 0.0);
    }
    void add(std::uint64_t key, double p) {
        if (dense_) {
            v_[key] += p;
        } else {
            m_[key] += p;
        }
    }
    void add(const Distribution& d, double w) {
        for (const auto& [k, p] : d) add(k, w * p);
    }
    [[nodiscard]] Distribution result(double scale) const {
        Distribution d;
        if (dense_) {
            for (std::size_t k = 0; k < v_.size(); ++k) {
                if (v_[k] != 0.0) d.emplace(k, v_[k] * scale);
            }
        } else {
            for (const auto& [k, p] : m_) d.emplace(k, p * scale);
        }
        return d;
    }

private:
    bool dense_;
    std::vector<double> v_;
    std::unordered_map<std::uint64_t, double> m_;
};

struct Branch {
    double weight;
    StateVector sv;
    std::vector<std::uint8_t> clbits;
};

class Engine {
public:
    Engine(const Circuit& c, std::size_t num_out, const std::vector<std::size_t>& order, const SimulatorOptions& opts)
        : c_(c), num_out_(num_out), opts_(opts) {
        if (num_out > 64) throw CapacityError("at most 64 output clbits are supported");
        if (num_out > c.num_clbits()) throw InternalError("more output clbits than the circuit declares");
        if (order.empty()) {
            order_.resize(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) order_[i] = i;
        } else {
            if (order.size() != c.size()) throw InternalError("execution order does not cover the circuit");
            order_ = order;
        }
        deferred_.assign(order_.size(), false);
        last_read_.assign(c.num_clbits(), -1);
        std::vector<bool> touched(c.num_qubits(), false), used(c.num_clbits(), false);
        for (std::size_t t = order_.size(); t-- > 0;) {
            const auto& ins = c_[order_[t]];
            if (ins.kind == GateKind::Measure && !touched[ins.qubits[0]] && !used[ins.clbits[0]]) {
                deferred_[t] = true;
            }
            if (ins.kind == GateKind::Barrier) continue;
            for (Qubit q : ins.qubits) touched[q] = true;
            for (Clbit b : ins.clbits) used[b] = true;
            if (ins.condition) {
                used[ins.condition->clbit] = true;
                if (last_read_[ins.condition->clbit] < 0) {
                    last_read_[ins.condition->clbit] = static_cast<std::int64_t>(t);
                }
            }
        }
    }

    [[nodiscard]] const std::vector<std::size_t>& order() const { return order_; }

    /// Branching run; nullopt when the branch count exceeds cap.
    std::optional<Distribution> exact(const Realization& errs, std::size_t cap) const {
        std::vector<Branch> br;
        br.push_back({1.0, StateVector(c_.num_qubits(), opts_.qubit_limit), std::vector<std::uint8_t>(c_.num_clbits(), 0)});
        std::vector<Deferred> deferred;
        std::size_t e = 0;
        for (std::size_t t = 0; t < order_.size(); ++t) {
            const auto& ins = c_[order_[t]];
            int code = 0;
            if (e < errs.size() && errs[e].first == t) code = errs[e++].second;
            switch (ins.kind) {
                case GateKind::Barrier:
                case GateKind::VirtualGate:
                    break;
                case GateKind::Measure: {
                    if (deferred_[t]) {
                        deferred.push_back({ins.qubits[0], ins.clbits[0], code != 0});
                        break;
                    }
                    std::vector<Branch> next;
                    next.reserve(br.size() * 2);
                    for (auto& b : br) {
                        const double p1 = b.sv.probability_one(ins.qubits[0]);
                        if (p1 < k_certain || p1 > 1.0 - k_certain) {
                            const int out = p1 < k_certain ? 0 : 1;
                            b.sv.collapse(ins.qubits[0], out);
                            b.clbits[ins.clbits[0]] = static_cast<std::uint8_t>(out ^ (code != 0));
                            next.push_back(std::move(b));
                            continue;
                        }
                        Branch one{b.weight * p1, b.sv, b.clbits};
                        one.sv.collapse(ins.qubits[0], 1);
                        one.clbits[ins.clbits[0]] = static_cast<std::uint8_t>(1 ^ (code != 0));
                        b.weight *= 1.0 - p1;
                        b.sv.collapse(ins.qubits[0], 0);
                        b.clbits[ins.clbits[0]] = static_cast<std::uint8_t>(code != 0);
                        next.push_back(std::move(b));
                        next.push_back(std::move(one));
                    }
                    br = std::move(next);
                    merge(br, t);
                    break;
                }
                case GateKind::Reset: {
                    if (code != 0) break;
                    std::vector<Branch> next;
                    next.reserve(br.size() * 2);
                    for (auto& b : br) {
                        const Qubit q = ins.qubits[0];
                        const double p1 = b.sv.probability_one(q);
                        if (p1 < k_certain || p1 > 1.0 - k_certain) {
                            b.sv.collapse(q, p1 < k_certain ? 0 : 1);
                            b.sv.set_zero(q);
                            next.push_back(std::move(b));
                            continue;
                        }
                        Branch one{b.weight * p1, b.sv, b.clbits};
                        one.sv.collapse(q, 1);
                        one.sv.set_zero(q);
                        b.weight *= 1.0 - p1;
                        b.sv.collapse(q, 0);
                        next.push_back(std::move(b));
                        next.push_back(std::move(one));
                    }
                    br = std::move(next);
                    merge(br, t);
                    break;
                }
                default:
                    for (auto& b : br) {
                        if (ins.condition && b.clbits[ins.condition->clbit] != ins.condition->value) continue;
                        b.sv.apply(ins);
                        apply_error(b.sv, ins, code);
                    }
                    break;
            }
            if (br.size() > cap) return std::nullopt;
        }
        Accumulator acc(num_out_);
        for (const auto& b : br) accumulate(b.sv, b.clbits, b.weight, deferred, acc);
        return acc.result(1.0);
    }

    /// One sampled run; adds the Born distribution of its final state to born.
    std::uint64_t trajectory(const Realization& errs, std::mt19937_64& rng, Accumulator& born) const {
        StateVector sv(c_.num_qubits(), opts_.qubit_limit);
        std::vector<std::uint8_t> cl(c_.num_clbits(), 0);
        std::vector<Deferred> deferred;
        std::size_t e = 0;
        for (std::size_t t = 0; t < order_.size(); ++t) {
            const auto& ins = c_[order_[t]];
            int code = 0;
            if (e < errs.size() && errs[e].first == t) code = errs[e++].second;
            switch (ins.kind) {
                case GateKind::Barrier:
                case GateKind::VirtualGate:
                    break;
                case GateKind::Measure: {
                    if (deferred_[t]) {
                        deferred.push_back({ins.qubits[0], ins.clbits[0], code != 0});
                        break;
                    }
                    const int out = sample(sv, ins.qubits[0], rng);
                    cl[ins.clbits[0]] = static_cast<std::uint8_t>(out ^ (code != 0));
                    break;
                }
                case GateKind::Reset:
                    if (code != 0) break;
                    sample(sv, ins.qubits[0], rng);
                    sv.set_zero(ins.qubits[0]);
                    break;
                default:
                    if (ins.condition && cl[ins.condition->clbit] != ins.condition->value) break;
                    sv.apply(ins);
                    apply_error(sv, ins, code);
                    break;
            }
        }
        // Draw one basis state for the deferred measurements.
        const auto& amp = sv.amplitudes();
        double u = uniform(rng) * sv.norm_squared();
        std::size_t pick = amp.size() - 1;
        for (std::size_t i = 0; i < amp.size(); ++i) {
            u -= std::norm(amp[i]);
            if (u < 0.0) {
                pick = i;
                break;
            }
        }
        std::uint64_t key = base_key(cl);
        for (const auto& d : deferred) set_bit(key, d.clbit, bit_at(sv, d.qubit, pick) ^ d.flip);
        accumulate(sv, cl, 1.0 / sv.norm_squared(), deferred, born);
        return key;
    }

private:
    struct Deferred {
        Qubit qubit;
        Clbit clbit;
        bool flip;
    };

    static int sample(StateVector& sv, Qubit q, std::mt19937_64& rng) {
        const double p1 = sv.probability_one(q);
        int out;
        if (p1 < k_certain) {
            out = 0;
        } else if (p1 > 1.0 - k_certain) {
            out = 1;
        } else {
            out = uniform(rng) < p1 ? 1 : 0;
        }
        sv.collapse(q, out);
        return out;
    }

    static void apply_error(StateVector& sv, const Instruction& ins, int code) {
        if (code == 0) return;
        if (ins.qubits.size() == 1) {
            sv.apply_pauli(ins.qubits[0], code);
        } else {
            sv.apply_pauli(ins.qubits[0], code >> 2);
            sv.apply_pauli(ins.qubits[1], code & 3);
        }
    }

    static int bit_at(const StateVector& sv, Qubit q, std::size_t index) {
        const int slot = sv.slot_of(q);
        return slot < 0 ? sv.classical_value(q) : static_cast<int>(index >> slot & 1);
    }

    void set_bit(std::uint64_t& key, Clbit c, int v) const {
        if (c >= num_out_) return;
        if (v) {
            key |= std::uint64_t{1} << c;
        } else {
            key &= ~(std::uint64_t{1} << c);
        }
    }

    std::uint64_t base_key(const std::vector<std::uint8_t>& cl) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < num_out_; ++i) key |= std::uint64_t{cl[i]} << i;
        return key;
    }

    void accumulate(const StateVector& sv, const std::vector<std::uint8_t>& cl, double weight,
                    const std::vector<Deferred>& deferred, Accumulator& acc) const {
        const auto& amp = sv.amplitudes();
        const std::uint64_t base = base_key(cl);
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const double p = std::norm(amp[i]);
            if (p == 0.0) continue;
            std::uint64_t key = base;
            for (const auto& d : deferred) set_bit(key, d.clbit, bit_at(sv, d.qubit, i) ^ d.flip);
            acc.add(key, weight * p);
        }
    }

    bool live(Clbit c, std::size_t t) const {
        return c < num_out_ || last_read_[c] > static_cast<std::int64_t>(t);
    }

    void merge(std::vector<Branch>& br, std::size_t t) const {
        if (br.size() < 2) return;
        std::vector<bool> gone(br.size(), false);
        for (std::size_t i = 0; i < br.size(); ++i) {
            if (gone[i]) continue;
            for (std::size_t j = i + 1; j < br.size(); ++j) {
                if (gone[j]) continue;
                bool same = true;
                for (Clbit c = 0; c < br[i].clbits.size() && same; ++c) {
                    same = !live(c, t) || br[i].clbits[c] == br[j].clbits[c];
                }
                if (!same || !br[i].sv.same_state(br[j].sv, 1e-10)) continue;
                br[i].weight += br[j].weight;
                gone[j] = true;
            }
        }
        std::vector<Branch> kept;
        for (std::size_t i = 0; i < br.size(); ++i) {
            if (!gone[i]) kept.push_back(std::move(br[i]));
        }
        br = std::move(kept);
    }

    const Circuit& c_;
    std::size_t num_out_;
    SimulatorOptions opts_;
    std::vector<std::size_t> order_;
    std::vector<bool> deferred_;
    std::vector<std::int64_t> last_read_;
};

Realization sample_errors(const Engine& eng, const NoiseSpec& noise, std::mt19937_64& rng) {
    Realization r;
    const auto& order = eng.order();
    for (std::size_t t = 0; t < order.size(); ++t) {
        const ErrorChannel& ch = noise.channels[order[t]];
        if (ch.kind == ChannelKind::None) continue;
        if (uniform(rng) >= ch.p) continue;
        std::uint8_t code = 1;
        switch (ch.kind) {
            case ChannelKind::Depolarizing1:
                code = static_cast<std::uint8_t>(1 + std::min<std::uint64_t>(2, static_cast<std::uint64_t>(uniform(rng) * 3)));
                break;
            case ChannelKind::Depolarizing2:
            case ChannelKind::EprDepolarizing:
                code = static_cast<std::uint8_t>(1 + std::min<std::uint64_t>(14, static_cast<std::uint64_t>(uniform(rng) * 15)));
                break;
            default:
                break;
        }
        r.emplace_back(static_cast<std::uint32_t>(t), code);
    }
    return r;
}

std::uint64_t draw(const std::vector<std::pair<std::uint64_t, double>>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u,
                               [](double x, const std::pair<std::uint64_t, double>& e) { return x < e.second; });
    if (it == cdf.end()) --it;
    return it->first;
}

}  // namespace

std::vector<std::size_t> simulation_order(const AssembledCircuit& a) {
    const DependencyDag dag = build_dag(a.circuit);
    const std::size_t n = a.circuit.size();
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t i = 0; i < a.trace.order.size(); ++i) pos[a.trace.order[i]] = i;
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    // Emits v after its pending predecessors, iteratively to avoid deep recursion.
    auto emit = [&](std::size_t root) {
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        std::vector<std::vector<std::size_t>> preds;
        auto sorted_preds = [&](std::size_t v) {
            auto p = dag.predecessors[v];
            std::sort(p.begin(), p.end(), [&](std::size_t x, std::size_t y) { return pos[x] < pos[y]; });
            return p;
        };
        preds.push_back(sorted_preds(root));
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (done[v]) {
                stack.pop_back();
                preds.pop_back();
                continue;
            }
            if (k < preds.back().size()) {
                const std::size_t u = preds.back()[k++];
                if (!done[u]) {
                    stack.emplace_back(u, 0);
                    preds.push_back(sorted_preds(u));
                }
                continue;
            }
            done[v] = true;
            order.push_back(v);
            stack.pop_back();
            preds.pop_back();
        }
    };
    for (std::size_t v : a.trace.order) {
        if (!is_epr_preparation(a.circuit[v])) emit(v);
    }
    for (std::size_t v : a.trace.order) emit(v);
    return order;
}

std::uint64_t shot_seed(std::uint64_t master, std::uint64_t shot) {
    return splitmix(splitmix(master) ^ splitmix(shot + 0x632BE59BD9B4E019ULL));
}

Distribution run_exact(const Circuit& c, std::size_t num_output_clbits, const std::vector<std::size_t>& order,
                       const SimulatorOptions& opts) {
    Engine eng(c, num_output_clbits, order, opts);
    return *eng.exact({}, SIZE_MAX);
}

Distribution run_exact(const AssembledCircuit& a, const SimulatorOptions& opts) {
    return run_exact(a.circuit, a.num_output_clbits, simulation_order(a), opts);
}

TrajectoryRun run_trajectories(const Circuit& c, std::size_t num_output_clbits, const std::vector<std::size_t>& order,
                               const NoiseSpec& noise, std::size_t shots, std::uint64_t seed,
                               const SimulatorOptions& opts) {
    if (shots == 0) throw InputError("shots must be at least 1");
    if (noise.channels.size() != c.size()) throw InternalError("noise spec does not match the circuit");
    Engine eng(c, num_output_clbits, order, opts);

    TrajectoryRun run;
    auto& out = run.shots;
    out.resize(shots);
    std::vector<Realization> errs(shots);
    std::vector<std::size_t> clean;
    for (std::size_t s = 0; s < shots; ++s) {
        out[s].seed = shot_seed(seed, s);
        std::mt19937_64 rng(out[s].seed);
        errs[s] = sample_errors(eng, noise, rng);
        if (errs[s].empty()) clean.push_back(s);
    }

    // Error-free shots sample from one exact distribution.
    std::optional<std::vector<std::pair<std::uint64_t, double>>> cdf;
    Accumulator born(num_output_clbits);
    if (!clean.empty()) {
        if (auto dist = eng.exact({}, opts.branch_cap)) {
            born.add(*dist, static_cast<double>(clean.size()));
            std::vector<std::pair<std::uint64_t, double>> acc;
            double run = 0.0;
            for (const auto& [k, p] : *dist) {
                run += p;
                acc.emplace_back(k, run);
            }
            for (auto& e : acc) e.second /= run;
            cdf = std::move(acc);
        }
    }
    for (std::size_t s = 0; s < shots; ++s) {
        std::mt19937_64 rng(splitmix(out[s].seed));
        if (errs[s].empty() && cdf) {
            out[s].bits = draw(*cdf, uniform(rng));
        } else {
            out[s].bits = eng.trajectory(errs[s], rng, born);
        }
    }
    run.born = born.result(1.0 / static_cast<double>(shots));
    return run;
}

std::vector<ShotResult> run_shots(const Circuit& c, std::size_t num_output_clbits,
                                  const std::vector<std::size_t>& order, const NoiseSpec& noise, std::size_t shots,
                                  std::uint64_t seed, const SimulatorOptions& opts) {
    return run_trajectories(c, num_output_clbits, order, noise, shots, seed, opts).shots;
}

TrajectoryRun run_trajectories(const AssembledCircuit& a, const NoiseSpec& noise, std::size_t shots,
                               std::uint64_t seed, const SimulatorOptions& opts) {
    return run_trajectories(a.circuit, a.num_output_clbits, simulation_order(a), noise, shots, seed, opts);
}

std::vector<ShotResult> run_shots(const AssembledCircuit& a, const NoiseSpec& noise, std::size_t shots,
                                  std::uint64_t seed, const SimulatorOptions& opts) {
    return run_shots(a.circuit, a.num_output_clbits, simulation_order(a), noise, shots, seed, opts);
}

Distribution shots_to_distribution(const std::vector<ShotResult>& shots) {
    Distribution d;
    if (shots.empty()) return d;
    for (const auto& s : shots) d[s.bits] += 1.0;
    for (auto& [k, v] : d) v /= static_cast<double>(shots.size());
    return d;
}

double fidelity(const Distribution& noisy, const Distribution& ideal) {
    double s = 0.0;
    for (const auto& [k, p] : noisy) {
        auto it = ideal.find(k);
        if (it != ideal.end()) s += std::sqrt(p * it->second);
    }
    return std::min(1.0, s * s);
}

double top_ratio_fidelity(const Distribution& noisy, const Distribution& ideal) {
    if (ideal.empty()) return 0.0;
    auto top = std::max_element(ideal.begin(), ideal.end(),
                                [](const auto& a, const auto& b) { return a.second < b.second; });
    auto it = noisy.find(top->first);
    const double got = it == noisy.end() ? 0.0 : it->second;
    return std::min(1.0, got / top->second);
}

double total_variation(const Distribution& a, const Distribution& b) {
    double s = 0.0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        s += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, q] : b) {
        if (!a.count(k)) s += q;
    }
    return s / 2;
}

double max_abs_difference(const Distribution& a, const Distribution& b) {
    double m = 0.0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        m = std::max(m, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, q] : b) {
        if (!a.count(k)) m = std::max(m, q);
    }
    return m;
}

std::string bitstring(std::uint64_t key, std::size_t num_bits) {
    std::string s(num_bits, '0');
    for (std::size_t i = 0; i < num_bits; ++i) {
        if (key >> i & 1) s[num_bits - 1 - i] = '1';
    }
    return s;
}

}  // namespace disq

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

#include "disq/circuit_io.hpp"

#include <fstream>
#include <sstream>

#include "disq/error.hpp"

namespace disq {

namespace {

std::string_view role_name(QubitRole r) {
    return r == QubitRole::Data ? "data" : "communication";
}

QubitRole role_from_name(const std::string& s) {
    if (s == "data") return QubitRole::Data;
    if (s == "communication") return QubitRole::Communication;
    throw InputError("unknown qubit role '" + s + "'");
}

template <typename T>
T get_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("invalid JSON", line, col);
    }
}

Json instruction_to_json(const Instruction& ins) {
    Json j;
    j["kind"] = std::string(gate_name(ins.kind));
    j["params"] = ins.params;
    j["qubits"] = ins.qubits;
    j["clbits"] = ins.clbits;
    if (ins.condition) {
        Json c;
        c["clbit"] = ins.condition->clbit;
        c["value"] = ins.condition->value;
        j["condition"] = c;
    } else {
        j["condition"] = nullptr;
    }
    j["tag"] = ins.tag ? Json(*ins.tag) : Json(nullptr);
    return j;
}

Instruction instruction_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("instruction must be an object");
    Instruction ins;
    const auto kind_name = get_field<std::string>(j, "kind");
    const auto kind = gate_from_name(kind_name);
    if (!kind) throw InputError("unknown gate '" + kind_name + "'");
    ins.kind = *kind;
    if (j.contains("params")) ins.params = get_field<std::vector<double>>(j, "params");
    ins.qubits = get_field<std::vector<Qubit>>(j, "qubits");
    if (j.contains("clbits")) ins.clbits = get_field<std::vector<Clbit>>(j, "clbits");
    if (j.contains("condition") && !j["condition"].is_null()) {
        const Json& c = j["condition"];
        ins.condition = Condition{get_field<Clbit>(c, "clbit"), get_field<int>(c, "value")};
    }
    if (j.contains("tag") && !j["tag"].is_null()) ins.tag = get_field<std::string>(j, "tag");
    return ins;
}

Json circuit_to_json(const Circuit& c) {
    Json j;
    j["num_qubits"] = c.num_qubits();
    j["num_clbits"] = c.num_clbits();
    Json roles = Json::array();
    for (QubitRole r : c.qubit_roles()) roles.push_back(std::string(role_name(r)));
    j["qubit_roles"] = roles;
    Json ins = Json::array();
    for (const auto& i : c) ins.push_back(instruction_to_json(i));
    j["instructions"] = ins;
    return j;
}

Circuit circuit_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("circuit must be a JSON object");
    Circuit c(get_field<std::size_t>(j, "num_qubits"), get_field<std::size_t>(j, "num_clbits"));
    if (j.contains("qubit_roles")) {
        const auto roles = get_field<std::vector<std::string>>(j, "qubit_roles");
        if (roles.size() != c.num_qubits()) throw InputError("qubit_roles length mismatch");
        for (Qubit q = 0; q < roles.size(); ++q) c.set_role(q, role_from_name(roles[q]));
    }
    if (!j.contains("instructions") || !j["instructions"].is_array()) {
        throw InputError("missing field 'instructions'");
    }
    std::size_t index = 0;
    for (const auto& ji : j["instructions"]) {
        try {
            c.append(instruction_from_json(ji));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw InputError("instruction " + std::to_string(index) + ": " + e.what());
        }
        ++index;
    }
    return c;
}

std::string serialize_circuit(const Circuit& c) { return circuit_to_json(c).dump(2) + "\n"; }

Circuit load_circuit_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto format =
        path.extension() == ".qasm" ? CircuitFormat::Qasm2 : CircuitFormat::NativeJson;
    return parse_circuit(text, format);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace disq

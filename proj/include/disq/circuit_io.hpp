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

#include <filesystem>
#include <string>
#include <string_view>

#include "disq/circuit.hpp"
#include "json.hpp"

namespace disq {

using Json = nlohmann::ordered_json;

enum class CircuitFormat { Qasm2, NativeJson };

/// Parses a circuit. Errors carry line/column (ParseError) or name the bad
/// gate / index (InputError).
Circuit parse_circuit(std::string_view text, CircuitFormat format);

/// Canonical native-json text. parse_circuit(serialize_circuit(c)) == c, and
/// serialize_circuit is a fixed point on its own output.
std::string serialize_circuit(const Circuit& c);

/// OpenQASM 2.0 text for circuits without tags or virtual gates.
std::string to_qasm(const Circuit& c);

Json instruction_to_json(const Instruction& ins);
Instruction instruction_from_json(const Json& j);
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// Loads by extension: ".qasm" is QASM, anything else native-json.
Circuit load_circuit_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Parses JSON text, converting library errors into ParseError with line/column.
Json parse_json_text(std::string_view text);

}  // namespace disq

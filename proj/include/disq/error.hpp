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
#include <stdexcept>
#include <string>
#include <vector>

namespace disq {

/// Broad failure classes; the CLI maps these onto process exit codes.
enum class ErrorCategory {
    Input = 2,      // malformed files, unknown names, bad arguments
    Capacity = 3,   // QPU capacity or network routing failures
    Internal = 4,   // broken invariants between pipeline stages
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     message),
          line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(ErrorCategory::Capacity, what) {}
};

class RoutingError : public Error {
public:
    explicit RoutingError(const std::string& what) : Error(ErrorCategory::Capacity, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorCategory::Internal, what) {}
};

/// Raised by topological_order; carries the node indices of one cycle.
class CycleError : public InternalError {
public:
    CycleError(const std::string& what, std::vector<std::size_t> cycle)
        : InternalError(what), cycle_(std::move(cycle)) {}

    [[nodiscard]] const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::size_t> cycle_;
};

/// Raised by the assembler when every live cursor waits on an unresolvable sync point.
class DeadlockError : public InternalError {
public:
    DeadlockError(const std::string& what, std::vector<std::string> blocked)
        : InternalError(what), blocked_(std::move(blocked)) {}

    [[nodiscard]] const std::vector<std::string>& blocked_sync_ids() const noexcept {
        return blocked_;
    }

private:
    std::vector<std::string> blocked_;
};

}  // namespace disq

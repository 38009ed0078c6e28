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

// OpenQASM 2.0 subset: qreg/creg, the built-in gate alphabet, measure,
// reset, barrier, and single-bit `if` conditions. No gate definitions.

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "disq/circuit_io.hpp"
#include "disq/error.hpp"

namespace disq {

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok type;
    std::string text;
    double number = 0.0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.type = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.type = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < src_.size() &&
                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.type = Tok::Number;
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    t.text += advance();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    t.text += advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        t.text += advance();
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        t.text += advance();
                    }
                }
                try {
                    std::size_t used = 0;
                    t.number = std::stod(t.text, &used);
                    if (used != t.text.size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
                }
            } else if (c == '"') {
                t.type = Tok::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"') t.text += advance();
                if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.column);
                advance();
            } else {
                t.type = Tok::Symbol;
                if ((c == '-' && peek(1) == '>') || (c == '=' && peek(1) == '=')) {
                    t.text += advance();
                    t.text += advance();
                } else if (std::string_view("[](){};,+-*/^").find(c) != std::string_view::npos) {
                    t.text += advance();
                } else {
                    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Register {
    std::size_t offset;
    std::size_t size;
};

/// Either a whole register or one element of it.
struct Operand {
    std::string reg;
    std::optional<std::size_t> index;
    const Token* where;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Circuit run() {
        if (is_ident("OPENQASM")) {
            next();
            expect_type(Tok::Number, "version number");
            expect(";");
        }
        while (cur().type != Tok::End) statement();
        Circuit c(num_qubits_, num_clbits_);
        for (auto& ins : pending_) {
            try {
                c.append(std::move(ins.first));
            } catch (const InputError& e) {
                throw ParseError(e.what(), ins.second->line, ins.second->column);
            }
        }
        return c;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_ident(std::string_view s) const { return cur().type == Tok::Ident && cur().text == s; }
    bool is_symbol(std::string_view s) const { return cur().type == Tok::Symbol && cur().text == s; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(msg, t.line, t.column);
    }

    void expect(std::string_view sym) {
        if (!is_symbol(sym)) fail("expected '" + std::string(sym) + "'", cur());
        next();
    }

    const Token& expect_type(Tok type, const char* what) {
        if (cur().type != type) fail(std::string("expected ") + what, cur());
        return next();
    }

    std::size_t expect_index() {
        const Token& t = expect_type(Tok::Number, "integer");
        if (t.number < 0 || std::floor(t.number) != t.number) fail("expected integer", t);
        return static_cast<std::size_t>(t.number);
    }

    void statement() {
        const Token& head = cur();
        if (head.type != Tok::Ident) fail("expected statement", head);
        if (head.text == "include") {
            next();
            expect_type(Tok::String, "file name");
            expect(";");
            return;
        }
        if (head.text == "qreg" || head.text == "creg") {
            next();
            const Token& name = expect_type(Tok::Ident, "register name");
            expect("[");
            const std::size_t size = expect_index();
            expect("]");
            expect(";");
            auto& regs = head.text == "qreg" ? qregs_ : cregs_;
            if (qregs_.count(name.text) || cregs_.count(name.text)) {
                fail("duplicate register '" + name.text + "'", name);
            }
            auto& counter = head.text == "qreg" ? num_qubits_ : num_clbits_;
            regs[name.text] = Register{counter, size};
            counter += size;
            return;
        }
        if (head.text == "gate" || head.text == "opaque") fail("gate definitions are not supported", head);

        std::optional<Condition> cond;
        if (head.text == "if") {
            next();
            expect("(");
            const Token& reg_tok = expect_type(Tok::Ident, "classical register");
            auto it = cregs_.find(reg_tok.text);
            if (it == cregs_.end()) fail("unknown classical register '" + reg_tok.text + "'", reg_tok);
            std::size_t bit;
            if (is_symbol("[")) {
                next();
                const std::size_t idx = expect_index();
                expect("]");
                if (idx >= it->second.size) fail("clbit index out of range", reg_tok);
                bit = it->second.offset + idx;
            } else {
                if (it->second.size != 1) fail("only single-bit conditions are supported", reg_tok);
                bit = it->second.offset;
            }
            expect("==");
            const std::size_t value = expect_index();
            if (value > 1) fail("condition value must be 0 or 1", reg_tok);
            expect(")");
            cond = Condition{static_cast<Clbit>(bit), static_cast<int>(value)};
        }
        operation(cond);
    }

    void operation(const std::optional<Condition>& cond) {
        const Token& name = expect_type(Tok::Ident, "gate name");
        if (name.text == "measure") {
            Operand q = operand();
            expect("->");
            Operand c = operand();
            expect(";");
            if (cond) fail("conditions are only allowed on unitary gates", name);
            auto qs = resolve(q, qregs_, "quantum");
            auto cs = resolve(c, cregs_, "classical");
            if (qs.size() != cs.size()) fail("measure register sizes differ", name);
            for (std::size_t i = 0; i < qs.size(); ++i) {
                emit(make_measure(static_cast<Qubit>(qs[i]), static_cast<Clbit>(cs[i])), name);
            }
            return;
        }
        std::string lower = name.text == "CX" ? "cx" : name.text;
        auto kind = gate_from_name(lower);
        if (!kind || *kind == GateKind::VirtualGate || *kind == GateKind::Measure) {
            fail("unknown gate '" + name.text + "'", name);
        }
        std::vector<double> params;
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                params.push_back(expression());
                while (is_symbol(",")) {
                    next();
                    params.push_back(expression());
                }
            }
            expect(")");
        }
        const auto& info = gate_info(*kind);
        if (static_cast<int>(params.size()) != info.num_params) {
            fail(std::string(info.name) + " expects " + std::to_string(info.num_params) +
                     " parameter(s)",
                 name);
        }
        std::vector<Operand> ops;
        ops.push_back(operand());
        while (is_symbol(",")) {
            next();
            ops.push_back(operand());
        }
        expect(";");

        std::vector<std::vector<std::size_t>> resolved;
        std::size_t width = 1;
        for (const auto& op : ops) {
            resolved.push_back(resolve(op, qregs_, "quantum"));
            if (!op.index) {
                if (width != 1 && resolved.back().size() != width) fail("register sizes differ", name);
                width = resolved.back().size();
            }
        }
        if (*kind == GateKind::Barrier) {
            std::vector<Qubit> all;
            for (auto& r : resolved) for (auto q : r) all.push_back(static_cast<Qubit>(q));
            emit(make_barrier(all), name);
            return;
        }
        if (info.arity >= 0 && static_cast<int>(ops.size()) != info.arity) {
            fail(std::string(info.name) + " expects " + std::to_string(info.arity) + " operand(s)", name);
        }
        for (std::size_t k = 0; k < width; ++k) {
            Instruction ins;
            ins.kind = *kind;
            ins.params = params;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                const auto& r = resolved[i];
                ins.qubits.push_back(static_cast<Qubit>(ops[i].index ? r[0] : r[k]));
            }
            ins.condition = cond;
            emit(std::move(ins), name);
        }
    }

    Operand operand() {
        const Token& t = expect_type(Tok::Ident, "register operand");
        Operand op{t.text, std::nullopt, &t};
        if (is_symbol("[")) {
            next();
            op.index = expect_index();
            expect("]");
        }
        return op;
    }

    std::vector<std::size_t> resolve(const Operand& op, const std::map<std::string, Register>& regs,
                                     const char* what) const {
        auto it = regs.find(op.reg);
        if (it == regs.end()) fail(std::string("unknown ") + what + " register '" + op.reg + "'", *op.where);
        if (op.index) {
            if (*op.index >= it->second.size) {
                fail("index " + std::to_string(*op.index) + " out of range for '" + op.reg + "'", *op.where);
            }
            return {it->second.offset + *op.index};
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < it->second.size; ++i) out.push_back(it->second.offset + i);
        return out;
    }

    void emit(Instruction ins, const Token& where) { pending_.emplace_back(std::move(ins), &where); }

    // expression := term (('+'|'-') term)*
    double expression() {
        double v = term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = next().text == "+";
            const double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    double term() {
        double v = power();
        while (is_symbol("*") || is_symbol("/")) {
            const Token& op = next();
            const double r = power();
            if (op.text == "/" && r == 0.0) fail("division by zero", op);
            v = op.text == "*" ? v * r : v / r;
        }
        return v;
    }

    double power() {
        const double base = unary();
        if (is_symbol("^")) {
            next();
            return std::pow(base, power());
        }
        return base;
    }

    double unary() {
        if (is_symbol("-")) {
            next();
            return -unary();
        }
        if (is_symbol("+")) {
            next();
            return unary();
        }
        return primary();
    }

    double primary() {
        const Token& t = cur();
        if (t.type == Tok::Number) {
            next();
            return t.number;
        }
        if (t.type == Tok::Ident) {
            next();
            if (t.text == "pi") return std::numbers::pi;
            static const std::map<std::string, double (*)(double)> funcs = {
                {"sin", [](double x) { return std::sin(x); }},
                {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},
                {"exp", [](double x) { return std::exp(x); }},
                {"ln", [](double x) { return std::log(x); }},
                {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            auto it = funcs.find(t.text);
            if (it == funcs.end()) fail("unknown identifier '" + t.text + "' in expression", t);
            expect("(");
            const double arg = expression();
            expect(")");
            return it->second(arg);
        }
        if (is_symbol("(")) {
            next();
            const double v = expression();
            expect(")");
            return v;
        }
        fail("expected expression", t);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::size_t num_qubits_ = 0;
    std::size_t num_clbits_ = 0;
    std::vector<std::pair<Instruction, const Token*>> pending_;
};

std::string format_param(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

}  // namespace

Circuit parse_circuit(std::string_view text, CircuitFormat format) {
    if (format == CircuitFormat::NativeJson) return circuit_from_json(parse_json_text(text));
    Parser parser(Lexer(text).run());
    return parser.run();
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "qreg q[" << c.num_qubits() << "];\n";
    if (c.num_clbits() > 0) out << "creg c[" << c.num_clbits() << "];\n";
    for (const auto& ins : c) {
        if (ins.kind == GateKind::VirtualGate) {
            throw InputError("virtual gates have no QASM representation");
        }
        if (ins.condition) out << "if (c[" << ins.condition->clbit << "]==" << ins.condition->value << ") ";
        if (ins.kind == GateKind::Measure) {
            out << "measure q[" << ins.qubits[0] << "] -> c[" << ins.clbits[0] << "];\n";
            continue;
        }
        out << gate_name(ins.kind);
        if (!ins.params.empty()) {
            out << "(";
            for (std::size_t i = 0; i < ins.params.size(); ++i) {
                out << (i ? "," : "") << format_param(ins.params[i]);
            }
            out << ")";
        }
        for (std::size_t i = 0; i < ins.qubits.size(); ++i) {
            out << (i ? "," : " ") << "q[" << ins.qubits[i] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace disq

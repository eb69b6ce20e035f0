#include "tram/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace tram {
namespace {

struct Token {
    enum class Type { Identifier, Number, Symbol, String, Arrow, End };
    Type type = Type::End;
    std::string text;
    double value = 0.0;
    int line = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.line = line_;
        if (pos_ >= src_.size()) return tok;
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok.type = Token::Type::Identifier;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                tok.text += src_[pos_++];
            }
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            tok.type = Token::Type::Number;
            const size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                    src_[pos_] == 'e' || src_[pos_] == 'E' ||
                    ((src_[pos_] == '+' || src_[pos_] == '-') && pos_ > start &&
                     (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E')))) {
                ++pos_;
            }
            tok.text = std::string(src_.substr(start, pos_ - start));
            char* end = nullptr;
            tok.value = std::strtod(tok.text.c_str(), &end);
            if (end != tok.text.c_str() + tok.text.size()) {
                throw ParseError(line_, "malformed number '" + tok.text + "'");
            }
            return tok;
        }
        if (c == '"') {
            tok.type = Token::Type::String;
            ++pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') tok.text += src_[pos_++];
            if (pos_ >= src_.size()) throw ParseError(line_, "unterminated string");
            ++pos_;
            return tok;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            tok.type = Token::Type::Arrow;
            tok.text = "->";
            pos_ += 2;
            return tok;
        }
        tok.type = Token::Type::Symbol;
        tok.text = std::string(1, c);
        ++pos_;
        return tok;
    }

    [[nodiscard]] int line() const { return line_; }

private:
    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
};

class Parser {
public:
    Parser(std::string_view src, std::string name) : lexer_(src), name_(std::move(name)) {
        advance();
    }

    Circuit parse() {
        if (cur_.type == Token::Type::Identifier && cur_.text == "OPENQASM") {
            advance();
            expect_number("version");
            expect_symbol(";");
        }
        std::vector<Gate> pending;
        while (cur_.type != Token::Type::End) {
            statement(pending);
        }
        if (qreg_size_ == 0) throw ParseError(lexer_.line(), "no qreg declared");
        Circuit c(qreg_size_, name_);
        for (Gate& g : pending) {
            try {
                c.add(std::move(g));
            } catch (const std::exception& e) {
                throw ParseError(lexer_.line(), e.what());
            }
        }
        return c;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect_symbol(const std::string& s) {
        if (cur_.type != Token::Type::Symbol || cur_.text != s) {
            throw ParseError(cur_.line, "expected '" + s + "', got '" + cur_.text + "'");
        }
        advance();
    }

    double expect_number(const char* what) {
        if (cur_.type != Token::Type::Number) {
            throw ParseError(cur_.line, std::string("expected ") + what);
        }
        const double v = cur_.value;
        advance();
        return v;
    }

    std::string expect_identifier(const char* what) {
        if (cur_.type != Token::Type::Identifier) {
            throw ParseError(cur_.line, std::string("expected ") + what);
        }
        std::string s = cur_.text;
        advance();
        return s;
    }

    int bracket_index() {
        expect_symbol("[");
        const double v = expect_number("index");
        expect_symbol("]");
        const int i = static_cast<int>(v);
        if (v != i || i < 0) throw ParseError(cur_.line, "index must be a nonnegative integer");
        return i;
    }

    // Register reference: name[index], or bare name when allow_whole is set
    // (returns -1 for "whole register").
    int qubit_ref(bool allow_whole = false) {
        const int line = cur_.line;
        const std::string reg = expect_identifier("register name");
        if (reg != qreg_name_) throw ParseError(line, "unknown register '" + reg + "'");
        if (allow_whole && !(cur_.type == Token::Type::Symbol && cur_.text == "[")) return -1;
        const int idx = bracket_index();
        if (idx >= qreg_size_) {
            throw ParseError(line, "qubit index " + std::to_string(idx) +
                                       " out of declared range [0, " +
                                       std::to_string(qreg_size_) + ")");
        }
        return idx;
    }

    // Angle grammar: expr := term (('+'|'-') term)*
    //                term := factor (('*'|'/') factor)*
    //                factor := ['-'] (number | 'pi' | '(' expr ')')
    double angle_expr() {
        double v = angle_term();
        while (cur_.type == Token::Type::Symbol && (cur_.text == "+" || cur_.text == "-")) {
            const bool plus = cur_.text == "+";
            advance();
            const double rhs = angle_term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double angle_term() {
        double v = angle_factor();
        while (cur_.type == Token::Type::Symbol && (cur_.text == "*" || cur_.text == "/")) {
            const bool mul = cur_.text == "*";
            advance();
            const double rhs = angle_factor();
            if (!mul && rhs == 0.0) throw ParseError(cur_.line, "division by zero in angle");
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double angle_factor() {
        if (cur_.type == Token::Type::Symbol && cur_.text == "-") {
            advance();
            return -angle_factor();
        }
        if (cur_.type == Token::Type::Number) {
            const double v = cur_.value;
            advance();
            return v;
        }
        if (cur_.type == Token::Type::Identifier && cur_.text == "pi") {
            advance();
            return M_PI;
        }
        if (cur_.type == Token::Type::Symbol && cur_.text == "(") {
            advance();
            const double v = angle_expr();
            expect_symbol(")");
            return v;
        }
        throw ParseError(cur_.line, "expected angle expression, got '" + cur_.text + "'");
    }

    void statement(std::vector<Gate>& out) {
        const int line = cur_.line;
        const std::string head = expect_identifier("statement");
        if (head == "include") {
            if (cur_.type != Token::Type::String) throw ParseError(line, "expected include path");
            if (cur_.text != "qelib1.inc") {
                throw ParseError(line, "unsupported include '" + cur_.text + "'");
            }
            advance();
            expect_symbol(";");
            return;
        }
        if (head == "qreg") {
            if (qreg_size_ != 0) throw ParseError(line, "only one qreg is supported");
            qreg_name_ = expect_identifier("register name");
            qreg_size_ = bracket_index();
            if (qreg_size_ <= 0) throw ParseError(line, "qreg must have positive size");
            expect_symbol(";");
            return;
        }
        if (head == "creg") {
            creg_name_ = expect_identifier("register name");
            creg_size_ = bracket_index();
            expect_symbol(";");
            return;
        }
        if (qreg_size_ == 0) throw ParseError(line, "statement before qreg declaration");
        if (head == "measure") {
            const int q = qubit_ref(/*allow_whole=*/true);
            if (cur_.type != Token::Type::Arrow) throw ParseError(line, "expected '->'");
            advance();
            const std::string creg = expect_identifier("classical register");
            if (creg != creg_name_) throw ParseError(line, "unknown creg '" + creg + "'");
            if (q < 0) {  // measure q -> c; expands per qubit
                if (!(cur_.type == Token::Type::Symbol && cur_.text == "[")) {
                    expect_symbol(";");
                    const int count = std::min(qreg_size_, creg_size_);
                    for (int i = 0; i < count; ++i) {
                        Gate g{GateKind::Measure, {i}, {}};
                        g.cbit = i;
                        out.push_back(std::move(g));
                    }
                    return;
                }
                throw ParseError(line, "whole-register measure cannot target a single bit");
            }
            const int cb = bracket_index();
            if (cb >= creg_size_) throw ParseError(line, "classical index out of range");
            expect_symbol(";");
            Gate g{GateKind::Measure, {q}, {}};
            g.cbit = cb;
            out.push_back(std::move(g));
            return;
        }
        if (head == "barrier") {
            std::vector<int> qs;
            bool whole = false;
            while (true) {
                const int q = qubit_ref(/*allow_whole=*/true);
                if (q < 0) {
                    whole = true;
                } else {
                    qs.push_back(q);
                }
                if (cur_.type == Token::Type::Symbol && cur_.text == ",") {
                    advance();
                    continue;
                }
                break;
            }
            expect_symbol(";");
            if (whole) {
                qs.resize(static_cast<size_t>(qreg_size_));
                for (int i = 0; i < qreg_size_; ++i) qs[static_cast<size_t>(i)] = i;
            }
            out.push_back(Gate{GateKind::Barrier, std::move(qs), {}});
            return;
        }
        const auto kind = gate_kind_from_name(head);
        if (!kind || is_meta(*kind)) {
            throw ParseError(line, "unsupported gate '" + head + "'");
        }
        std::vector<double> params;
        if (cur_.type == Token::Type::Symbol && cur_.text == "(") {
            advance();
            params.push_back(angle_expr());
            expect_symbol(")");
        }
        if (is_rotation(*kind) != !params.empty()) {
            throw ParseError(line, is_rotation(*kind)
                                       ? "gate '" + head + "' requires an angle"
                                       : "gate '" + head + "' takes no angle");
        }
        std::vector<int> qs;
        qs.push_back(qubit_ref());
        while (cur_.type == Token::Type::Symbol && cur_.text == ",") {
            advance();
            qs.push_back(qubit_ref());
        }
        expect_symbol(";");
        const size_t want = is_two_qubit_kind(*kind) ? 2 : 1;
        if (qs.size() != want) {
            throw ParseError(line, "gate '" + head + "' expects " + std::to_string(want) +
                                       " operand(s), got " + std::to_string(qs.size()));
        }
        out.push_back(Gate{*kind, std::move(qs), std::move(params)});
    }

    Lexer lexer_;
    Token cur_;
    std::string name_;
    std::string qreg_name_;
    std::string creg_name_;
    int qreg_size_ = 0;
    int creg_size_ = 0;
};

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view source, std::string name) {
    return Parser(source, std::move(name)).parse();
}

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open qasm file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str(), std::filesystem::path(path).stem().string());
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << c.num_qubits() << "];\n";
    int creg = 0;
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::Measure) creg = std::max(creg, g.cbit + 1);
    }
    if (creg > 0) os << "creg c[" << creg << "];\n";
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::Measure) {
            os << "measure q[" << g.qubits[0] << "] -> c[" << g.cbit << "];\n";
            continue;
        }
        os << gate_name(g.kind);
        if (!g.params.empty()) os << '(' << format_angle(g.params[0]) << ')';
        os << ' ';
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i > 0) os << ',';
            os << "q[" << g.qubits[i] << ']';
        }
        os << ";\n";
    }
    return os.str();
}

void write_qasm_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write qasm file: " + path);
    out << to_qasm(c);
}

}  // namespace tram

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tram/circuit.hpp"

namespace tram {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("qasm parse error at line " + std::to_string(line) + ": " +
                             message),
          line_(line) {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Parses the supported OpenQASM 2.0 subset: optional `OPENQASM 2.0;`
/// header, optional `include "qelib1.inc";`, one qreg, optional creg, the
/// gates h/x/y/z/rx/ry/rz/cx/cz/swap plus measure and barrier, and `//`
/// comments. Angle expressions accept numeric literals, `pi`, parentheses
/// and + - * /. Anything else is a ParseError with a line number.
[[nodiscard]] Circuit parse_qasm(std::string_view source, std::string name = "circuit");

/// Reads and parses a .qasm file; the circuit name defaults to the file stem.
[[nodiscard]] Circuit parse_qasm_file(const std::string& path);

/// Emits the same subset. parse(to_qasm(c)) reproduces c's gate list exactly.
[[nodiscard]] std::string to_qasm(const Circuit& c);

void write_qasm_file(const Circuit& c, const std::string& path);

}  // namespace tram

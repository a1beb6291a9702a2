#pragma once

#include <stdexcept>
#include <string>

namespace linkpred {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

// invalid argument or parameter outside its admissible range
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// solver failure, singular system, non-convergence
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// metric or correlation that has no defined value on the given input
struct undefined_value : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace linkpred

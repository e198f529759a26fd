#pragma once

#include <stdexcept>
#include <string>

namespace layerchain {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Invalid physical or structural input: out-of-range strengths, malformed
// matrices, occupancy violations, evaluation at a pole of a special function.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what_arg) : error(what_arg) {}
};

// A numerical procedure failed to meet its accuracy contract: iteration did
// not converge, a quadratic form turned out unstable, a grid was too coarse.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what_arg) : error(what_arg) {}
};

// Run-configuration files: syntax errors, unknown keys, unit mismatches.
class config_error : public error {
public:
    explicit config_error(const std::string& what_arg) : error(what_arg) {}
};

}  // namespace layerchain

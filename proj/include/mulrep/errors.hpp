#pragma once

#include <stdexcept>
#include <string>

#include "mulrep/int.hpp"

namespace mulrep {

// Malformed textual or JSON input.
struct parse_error : std::invalid_argument {
    explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

// A solver or operation was invoked on input outside its contract.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Definitive proof that no integer solution exists.
struct unrepresentable_error : std::runtime_error {
    unrepresentable_error(const std::string& what, Int witness_divisor)
        : std::runtime_error(what), divisor(std::move(witness_divisor)) {}
    Int divisor;  // modulus or gcd witnessing the obstruction
};

// A search or enumeration would exceed (or has exceeded) its configured budget.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal self-check failed; indicates a bug, never bad user input.
struct verification_error : std::logic_error {
    explicit verification_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mulrep

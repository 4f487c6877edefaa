#pragma once

#include <stdexcept>
#include <string>

namespace tritangle {

// Bad user input: unknown names, invalid permutations, malformed files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operand shapes outside what the dense kernel supports.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A documented precondition on a numerical object was violated
// (non-Hermitian matrix, density matrix with negative spectrum, ...).
class ContractError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quantity that is nonnegative analytically came out clearly negative.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tritangle

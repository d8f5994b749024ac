#pragma once

#include <stdexcept>
#include <string>

namespace eqc {

/// Operands disagree on qubit count, or an index is out of range.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Pauli product picked up a factor of +-i.
struct PhaseError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Lattice or graph parameters that do not describe a valid model.
struct GeometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Quantum numbers, couplings or configs that do not match a model.
struct MismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// State too large for the requested simulator.
struct SizeError : std::length_error {
    using std::length_error::length_error;
};

/// Non-Clifford gate handed to the stabilizer simulator.
struct UnsupportedGateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace eqc

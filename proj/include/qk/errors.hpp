#pragma once

#include <stdexcept>
#include <string>

namespace qk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by zero / inverting the zero element.
struct DegenerateOperand : Error {
    using Error::Error;
};

// Rank or dimension mismatch between operands.
struct ShapeError : Error {
    using Error::Error;
};

// A parameter limit hit a genuine pole after all removable factors cancelled.
struct PoleAtLimit : Error {
    using Error::Error;
};

// A tangent weight equals 1, so the Lefschetz denominator degenerates.
struct DegenerateLocalization : Error {
    using Error::Error;
};

// Input to the specialization map is not Weyl-invariant.
struct NotWeylInvariant : Error {
    using Error::Error;
};

// q = 1 specialization requested without a quantum-triviality certificate,
// or on an operator outside the P_i q^{Q_i d/dQ_i} algebra.
struct UnjustifiedSpecialization : Error {
    using Error::Error;
};

// An intermediate identity of a symbolic derivation failed exact expansion.
struct DerivationMismatch : Error {
    using Error::Error;
};

// Iterative root refinement did not converge within its budget.
struct RootFindingFailure : Error {
    using Error::Error;
};

// A series fed to the one-point extractor is not a small J-function.
struct NotSmallJ : Error {
    using Error::Error;
};

// No rewrite rule applies to a correlator that is not yet terminal.
struct StuckTerm : Error {
    using Error::Error;
};

// A rewrite step failed to decrease the termination measure.
struct MeasureNotDecreasing : Error {
    using Error::Error;
};

} // namespace qk

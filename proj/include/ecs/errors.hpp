#pragma once

#include <stdexcept>
#include <string>

namespace ecs {

// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ECS_DEFINE_ERROR(NAME)                                      \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(msg) {}       \
    }

ECS_DEFINE_ERROR(GramIllConditioned);  // labels nearly linearly dependent
ECS_DEFINE_ERROR(ModeMismatch);        // operands have different mode counts
ECS_DEFINE_ERROR(ZeroNorm);            // state has (numerically) zero norm
ECS_DEFINE_ERROR(LabelNotInBasis);     // coherent label missing from an OrthoBasis
ECS_DEFINE_ERROR(NeverGround);         // atomic ground projection has zero weight
ECS_DEFINE_ERROR(BadMode);             // mode index out of range or repeated
ECS_DEFINE_ERROR(NotHermitian);        // matrix fails the Hermitian tolerance
ECS_DEFINE_ERROR(NotNormalized);       // input state/matrix is not unit-normalized
ECS_DEFINE_ERROR(BadDims);             // matrix dimensions unsupported for the operation
ECS_DEFINE_ERROR(BadSplit);            // bipartition does not partition the modes
ECS_DEFINE_ERROR(NegativeRadicand);    // closed-form radicand below the clamp window
ECS_DEFINE_ERROR(DomainError);         // scalar parameter outside its domain
ECS_DEFINE_ERROR(CutoffTooSmall);      // Fock cutoff below the required tail bound
ECS_DEFINE_ERROR(ConvergenceFailure);  // iterative kernel failed to converge
ECS_DEFINE_ERROR(NumericalError);      // internal cross-check tripped

#undef ECS_DEFINE_ERROR

}  // namespace ecs

#pragma once

#include <span>
#include <vector>

#include "ecs/coherent.hpp"
#include "ecs/linalg.hpp"

namespace ecs {

/// Fraction of photons surviving a lossy channel.
struct NoiseParam {
    double eta;
    NoiseParam(double e) : eta(e) {  // NOLINT
        if (!(e >= 0.0 && e <= 1.0)) throw DomainError("noise parameter must lie in [0,1]");
    }
};

/// Beam splitter on modes (i, j):
/// (a_i, a_j) -> (a_i cos t - a_j sin t, a_i sin t + a_j cos t)
/// per term, coefficients untouched; |a_i|^2 + |a_j|^2 is conserved.
Superposition beamsplitter(const Superposition& x, int i, int j, double theta);

enum class EcsKind { qubit, qutrit, qufit };

/// Normalized two-mode entangled coherent state of the generated family:
///   qubit : labels +/- alpha/sqrt2,            2 weights
///   qutrit: labels (+-2 alpha + beta)/sqrt2 and beta/sqrt2, 3 weights
///   qufit : labels +/- alpha/sqrt2, +/- 3 alpha/sqrt2, 4 weights
/// Both modes carry the same label per term.
Superposition make_ecs(EcsKind kind, Cx alpha, Cx beta, std::span<const Cx> coeffs);

/// Photon-loss channel on the selected modes: each label g becomes
/// sqrt(eta) g and a fresh environment mode with label sqrt(1-eta) g is
/// appended (one per selected mode, in order).
Superposition lossy_channel(const Superposition& x, std::span<const int> modes,
                            NoiseParam eta);

/// Hermitian unit-trace matrix over the tensor-product orthonormal bases of
/// the kept modes.
class DensityMatrix {
public:
    DensityMatrix(std::vector<int> dims, Matrix m, std::vector<OrthoBasis> bases);

    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;
    const Matrix& matrix() const { return mat_; }
    const std::vector<OrthoBasis>& bases() const { return bases_; }

    /// Checks Hermiticity (1e-12), unit trace (1e-10) and PSD (-1e-10).
    void validate() const;

private:
    std::vector<int> dims_;
    Matrix mat_;
    std::vector<OrthoBasis> bases_;
};

/// rho = Tr_discarded |x><x| in the product basis of the kept modes' labels
/// (basis order = first appearance in the term list). Cross-term weights are
/// the exact overlaps of the discarded-mode labels.
DensityMatrix trace_out(const Superposition& x, std::span<const int> keep);

}  // namespace ecs

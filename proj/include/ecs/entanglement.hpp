#pragma once

#include <span>

#include "ecs/linalg.hpp"
#include "ecs/optics.hpp"

namespace ecs {

/// Real spectrum of a Hermitian matrix, sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;
};

/// Full spectrum via cyclic Jacobi sweeps (off-diagonal norm driven below
/// 1e-13). Accepts matrices up to dimension 64; throws NotHermitian when the
/// defect exceeds 1e-10.
Spectrum hermitian_eigenvalues(const Matrix& m);

/// Concurrence of a pure bipartite state from its coefficient matrix:
///   C = 2 sqrt( sum_{i<j} sum_{k<l} |a_ik a_jl - a_il a_jk|^2 ).
/// Requires sum |a_ij|^2 = 1 within 1e-10.
double pure_concurrence(const Matrix& a);

/// Two-qubit mixed-state concurrence max(0, l1-l2-l3-l4), with the l_i the
/// descending square roots of the spectrum of sqrt(rho) rho~ sqrt(rho),
/// rho~ = (sy x sy) conj(rho) (sy x sy) in the local qudit basis.
double wootters_concurrence(const DensityMatrix& rho);

/// Negativity |sum of negative eigenvalues| of the partial transpose over
/// the given modes; cross-checked on every call against (trace norm - 1)/2.
double negativity(const DensityMatrix& rho, std::span<const int> transposed_modes);

/// Closed-form concurrence of the generated two-qubit family in terms of the
/// pulse-amplitude ratio z = eps0 conj(eps1) and the label overlap p:
///   C = 2|z| (1 - p^2) / (1 + |z|^2 - 2 Re(z) p^2).
double c2_closed_form(Cx ratio, double p);

/// Published reference curve for the qutrit-family concurrence as a function
/// of p (rational-radical fit with fixed literal constants). Radicand values
/// in (-1e-9, 0) are clamped to zero; anything lower throws NegativeRadicand.
double c3_reference_curve(double p);

/// Concurrence of a two-mode superposition: orthonormalizes each mode's
/// labels and feeds the coefficient matrix to pure_concurrence.
double two_mode_concurrence(const Superposition& x);

struct MonogamyReport {
    double c_ab;
    double c_ad;
    double c_abd;
    double tau;  // c_abd^2 - c_ab^2 - c_ad^2
};

/// Closed forms for the three-mode family after a lossy channel:
///   C_AB = C_AD = p'^(3+eta) (1 - p'^(2 eta)) / (p'^(3 eta) - p'^6)
///   C_A(BD) = sqrt((1 - p'^(2 eta)) (1 - p'^(2(3-eta)))) / (1 - p'^(6-3 eta))
/// Defined for 0 < p' < 1, 0 < eta <= 1 (DomainError at the endpoints).
MonogamyReport monogamy_closed_forms(double pprime, double eta);

/// Builds (|-a,-a,-a> - |a,a,a>)/sqrt(2-2p'^3) through the two-beam-splitter
/// pipeline, sends all three modes through the lossy channel, and evaluates
/// C_AB and C_AD by trace-out + Wootters. C_A(BD) comes from the pure-state
/// coefficient form at eta = 1 and from the closed form otherwise.
MonogamyReport monogamy_pipeline(double pprime, double eta);

struct ViolationPair {
    double lhs;  // C_AB^2 + C_AD^2
    double rhs;  // C_A(BD)^2
};

/// The antisymmetric three-qutrit example in the orthogonal-label limit.
/// C_A(BD) comes from the pure coefficient form; the pair concurrences come
/// from the measurement-branch decomposition, which is tight here (every
/// state in the support has concurrence >= 1, and every branch reaches 1).
ViolationPair qutrit_violation_example();

}  // namespace ecs

#pragma once

#include <span>
#include <vector>

#include "ecs/coherent.hpp"
#include "ecs/linalg.hpp"

namespace ecs::fock {

// Brute-force validation path: states live in a truncated number basis and
// every quantity is recomputed by dense linear algebra, independent of the
// Gram-factorization route.

/// Smallest cutoff K whose Poisson tail P(n > K) with mean max_amp^2 is < tol.
int cutoff_for(double max_amp, double tol);

/// Number-basis amplitudes c_n = e^{-|g|^2/2} g^n / sqrt(n!), n = 0..K.
std::vector<Cx> coherent_amplitudes(CoherentLabel g, int cutoff);

/// Dense expansion of a superposition over (K+1)^n_modes number states,
/// mode 0 slowest. Throws CutoffTooSmall when K is below the 1e-12 tail
/// bound for the largest label in the state.
struct FockVector {
    int n_modes = 0;
    int cutoff = 0;
    std::vector<Cx> amps;

    int dim_per_mode() const { return cutoff + 1; }
};

FockVector to_fock(const Superposition& x, int cutoff);

/// Inner product of two states via their truncated expansions.
Cx oracle_inner(const Superposition& x, const Superposition& y, int cutoff);

/// Dense partial trace of |x><x| onto the kept modes (row-major over the
/// kept mode indices in the order given).
Matrix oracle_partial_trace(const Superposition& x, std::span<const int> keep,
                            int cutoff);

/// Negativity across a bipartition of the kept modes: partial trace, partial
/// transpose of `transposed` (subset of keep), full eigensolve, |sum of
/// negative eigenvalues|.
double oracle_negativity(const Superposition& x, std::span<const int> keep,
                         std::span<const int> transposed, int cutoff);

}  // namespace ecs::fock

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ecs/errors.hpp"
#include "ecs/linalg.hpp"

namespace ecs {

/// Complex field amplitude labelling one coherent state of one mode.
struct CoherentLabel {
    Cx amp{};

    CoherentLabel() = default;
    CoherentLabel(Cx a) : amp(a) {}  // NOLINT: labels convert freely from amplitudes
    CoherentLabel(double re, double im = 0.0) : amp(re, im) {}
};

/// Exact overlap <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
/// Satisfies overlap(a,b) = conj(overlap(b,a)) and |<a|b>| = exp(-|a-b|^2/2).
Cx overlap(CoherentLabel a, CoherentLabel b);

/// True when two labels address the same coherent state, up to rounding
/// introduced by the protocol arithmetic.
bool same_label(CoherentLabel a, CoherentLabel b);

struct Term {
    Cx coeff{};
    std::vector<CoherentLabel> labels;  // one per mode
};

/// Finite superposition sum_s coeff_s |labels_s[0]> ... |labels_s[m-1]>.
/// Terms with matching label tuples are merged on construction so equality
/// of states is well defined.
class Superposition {
public:
    Superposition(int n_modes, std::vector<Term> terms);

    int n_modes() const { return n_modes_; }
    const std::vector<Term>& terms() const { return terms_; }

    /// Builds a single-term product state.
    static Superposition product(std::span<const CoherentLabel> labels);

    /// Distinct labels of one mode, in order of first appearance.
    std::vector<CoherentLabel> mode_labels(int mode) const;

    Superposition scaled(Cx factor) const;

private:
    int n_modes_ = 0;
    std::vector<Term> terms_;
};

/// Exact inner product <x|y>, bilinear extension of overlap().
Cx inner(const Superposition& x, const Superposition& y);

/// Rescales so that inner(x,x) = 1. Throws ZeroNorm below 1e-15.
Superposition normalize(const Superposition& x);

/// Orthonormal qudit basis spanned by a set of coherent labels.
/// gram(i,j) = <labels_i|labels_j>, and factor is the upper-triangular R with
/// gram = R^dagger R; column i of R holds the coordinates of coherent state i,
/// so the first label maps to the first orthonormal ket and each subsequent
/// ket is the Gram-Schmidt residue of its label.
struct OrthoBasis {
    std::vector<CoherentLabel> labels;
    Matrix gram;
    Matrix factor;

    int dim() const { return static_cast<int>(labels.size()); }
    /// Index of a coherent label; throws LabelNotInBasis.
    int index_of(CoherentLabel l) const;
    /// Coordinates of coherent state i in the orthonormal basis (column i of factor).
    std::vector<Cx> coords(int i) const;
};

/// Cholesky-style factorization of the Gram matrix, pivot-free so the
/// basis order follows the label order. Throws GramIllConditioned when
/// det(G) < 1e-12 (labels nearly linearly dependent).
OrthoBasis orthonormalize(std::span<const CoherentLabel> labels);

/// Coefficient matrix a with x = sum_ij a_ij |e_i> (x) |e_j> for a two-mode
/// state; Parseval: sum |a_ij|^2 = inner(x,x).
Matrix coefficient_matrix(const Superposition& x, const OrthoBasis& basis1,
                          const OrthoBasis& basis2);

/// General n-mode coefficient tensor, flattened row-major over the given
/// per-mode bases (mode 0 slowest).
std::vector<Cx> coefficient_tensor(const Superposition& x,
                                   std::span<const OrthoBasis> bases);

}  // namespace ecs

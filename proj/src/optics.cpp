#include "ecs/optics.hpp"

#include <algorithm>
#include <cmath>

namespace ecs {

Superposition beamsplitter(const Superposition& x, int i, int j, double theta) {
    if (i == j || i < 0 || j < 0 || i >= x.n_modes() || j >= x.n_modes())
        throw BadMode("beamsplitter: invalid mode pair");
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<Term> out = x.terms();
    for (Term& t : out) {
        const Cx ai = t.labels[i].amp, aj = t.labels[j].amp;
        t.labels[i] = CoherentLabel{c * ai - s * aj};
        t.labels[j] = CoherentLabel{s * ai + c * aj};
    }
    return Superposition(x.n_modes(), std::move(out));
}

Superposition make_ecs(EcsKind kind, Cx alpha, Cx beta, std::span<const Cx> coeffs) {
    const double r2 = std::sqrt(2.0);
    std::vector<Cx> labels;
    switch (kind) {
        case EcsKind::qubit:
            labels = {alpha / r2, -alpha / r2};
            break;
        case EcsKind::qutrit:
            labels = {(2.0 * alpha + beta) / r2, beta / r2, (-2.0 * alpha + beta) / r2};
            break;
        case EcsKind::qufit:
            labels = {3.0 * alpha / r2, alpha / r2, -alpha / r2, -3.0 * alpha / r2};
            break;
    }
    if (coeffs.size() != labels.size())
        throw DomainError("make_ecs: weight count does not match the family");
    std::vector<Term> terms;
    for (size_t k = 0; k < labels.size(); ++k)
        terms.push_back({coeffs[k], {CoherentLabel{labels[k]}, CoherentLabel{labels[k]}}});
    return normalize(Superposition(2, std::move(terms)));
}

Superposition lossy_channel(const Superposition& x, std::span<const int> modes,
                            NoiseParam eta) {
    for (size_t a = 0; a < modes.size(); ++a) {
        if (modes[a] < 0 || modes[a] >= x.n_modes()) throw BadMode("lossy_channel: mode out of range");
        for (size_t b = a + 1; b < modes.size(); ++b)
            if (modes[a] == modes[b]) throw BadMode("lossy_channel: repeated mode");
    }
    const double ks = std::sqrt(eta.eta), ke = std::sqrt(1.0 - eta.eta);
    std::vector<Term> out = x.terms();
    for (Term& t : out) {
        std::vector<CoherentLabel> env;
        env.reserve(modes.size());
        for (int m : modes) {
            const Cx g = t.labels[m].amp;
            t.labels[m] = CoherentLabel{ks * g};
            env.push_back(CoherentLabel{ke * g});
        }
        t.labels.insert(t.labels.end(), env.begin(), env.end());
    }
    return Superposition(x.n_modes() + static_cast<int>(modes.size()), std::move(out));
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Matrix m, std::vector<OrthoBasis> bases)
    : dims_(std::move(dims)), mat_(std::move(m)), bases_(std::move(bases)) {
    int total = 1;
    for (int d : dims_) total *= d;
    if (mat_.rows() != total || mat_.cols() != total)
        throw BadDims("density matrix size does not match mode dimensions");
}

int DensityMatrix::total_dim() const {
    int total = 1;
    for (int d : dims_) total *= d;
    return total;
}

void DensityMatrix::validate() const {
    if (mat_.hermitian_defect() > 1e-12)
        throw NotHermitian("density matrix: Hermitian defect above 1e-12");
    if (std::abs(mat_.trace().real() - 1.0) > 1e-10 || std::abs(mat_.trace().imag()) > 1e-10)
        throw NotNormalized("density matrix: trace differs from one");
    EigenSystem es = jacobi_eigensystem(mat_);
    if (!es.values.empty() && es.values.front() < -1e-10)
        throw NumericalError("density matrix: significantly negative eigenvalue");
}

DensityMatrix trace_out(const Superposition& x, std::span<const int> keep) {
    if (keep.empty()) throw BadMode("trace_out: keep at least one mode");
    for (size_t a = 0; a < keep.size(); ++a) {
        if (keep[a] < 0 || keep[a] >= x.n_modes()) throw BadMode("trace_out: mode out of range");
        for (size_t b = a + 1; b < keep.size(); ++b)
            if (keep[a] == keep[b]) throw BadMode("trace_out: repeated mode");
    }
    std::vector<int> discarded;
    for (int m = 0; m < x.n_modes(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) discarded.push_back(m);

    std::vector<OrthoBasis> bases;
    std::vector<int> dims;
    int total = 1;
    for (int m : keep) {
        const std::vector<CoherentLabel> labels = x.mode_labels(m);
        bases.push_back(orthonormalize(labels));
        dims.push_back(bases.back().dim());
        total *= bases.back().dim();
    }

    // Per-term product coordinates over the kept bases.
    const auto& ts = x.terms();
    const int nt = static_cast<int>(ts.size());
    std::vector<std::vector<Cx>> vec(nt, std::vector<Cx>(total));
    for (int s = 0; s < nt; ++s) {
        std::vector<Cx> partial{Cx{1.0, 0.0}}, next;
        for (size_t k = 0; k < keep.size(); ++k) {
            const OrthoBasis& b = bases[k];
            const int idx = b.index_of(ts[s].labels[keep[k]]);
            next.assign(partial.size() * b.dim(), Cx{});
            for (size_t q = 0; q < partial.size(); ++q)
                for (int r = 0; r < b.dim(); ++r) next[q * b.dim() + r] = partial[q] * b.factor(r, idx);
            partial.swap(next);
        }
        vec[s] = std::move(partial);
    }

    Matrix rho(total, total);
    for (int s = 0; s < nt; ++s) {
        for (int t = 0; t < nt; ++t) {
            // <discarded part of term t | discarded part of term s>
            Cx w = ts[s].coeff * std::conj(ts[t].coeff);
            for (int m : discarded) w *= overlap(ts[t].labels[m], ts[s].labels[m]);
            if (w == Cx{}) continue;
            for (int i = 0; i < total; ++i) {
                const Cx wi = w * vec[s][i];
                if (wi == Cx{}) continue;
                for (int j = 0; j < total; ++j) rho(i, j) += wi * std::conj(vec[t][j]);
            }
        }
    }
    rho.hermitize();
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw ZeroNorm("trace_out: zero-trace result");
    rho *= Cx{1.0 / tr, 0.0};
    return DensityMatrix(std::move(dims), std::move(rho), std::move(bases));
}

}  // namespace ecs

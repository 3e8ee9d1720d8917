#include "ecs/coherent.hpp"

#include <algorithm>
#include <cmath>

namespace ecs {

namespace {

void ensure_finite(CoherentLabel l) {
    if (!std::isfinite(l.amp.real()) || !std::isfinite(l.amp.imag()))
        throw DomainError("coherent label must be finite");
}

}  // namespace

Cx overlap(CoherentLabel a, CoherentLabel b) {
    ensure_finite(a);
    ensure_finite(b);
    return std::exp(-0.5 * std::norm(a.amp) - 0.5 * std::norm(b.amp) +
                    std::conj(a.amp) * b.amp);
}

bool same_label(CoherentLabel a, CoherentLabel b) {
    const double scale = 1.0 + std::max(std::abs(a.amp), std::abs(b.amp));
    return std::abs(a.amp - b.amp) <= 1e-12 * scale;
}

Superposition::Superposition(int n_modes, std::vector<Term> terms) : n_modes_(n_modes) {
    if (n_modes <= 0) throw BadMode("superposition needs at least one mode");
    if (terms.empty()) throw ZeroNorm("superposition needs at least one term");
    for (const Term& t : terms) {
        if (static_cast<int>(t.labels.size()) != n_modes)
            throw ModeMismatch("term label count does not match mode count");
        for (CoherentLabel l : t.labels) ensure_finite(l);
    }
    // Merge duplicate label tuples (canonical form).
    for (Term& t : terms) {
        bool merged = false;
        for (Term& u : terms_) {
            bool eq = true;
            for (int m = 0; m < n_modes_ && eq; ++m) eq = same_label(u.labels[m], t.labels[m]);
            if (eq) {
                u.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) terms_.push_back(std::move(t));
    }
    // Exact cancellations drop out, but the state keeps at least one term.
    if (terms_.size() > 1) {
        auto it = std::remove_if(terms_.begin() + 1, terms_.end(),
                                 [](const Term& t) { return t.coeff == Cx{}; });
        terms_.erase(it, terms_.end());
        if (terms_.size() > 1 && terms_.front().coeff == Cx{}) terms_.erase(terms_.begin());
    }
}

Superposition Superposition::product(std::span<const CoherentLabel> labels) {
    Term t;
    t.coeff = 1.0;
    t.labels.assign(labels.begin(), labels.end());
    return Superposition(static_cast<int>(labels.size()), {std::move(t)});
}

std::vector<CoherentLabel> Superposition::mode_labels(int mode) const {
    if (mode < 0 || mode >= n_modes_) throw BadMode("mode index out of range");
    std::vector<CoherentLabel> out;
    for (const Term& t : terms_) {
        CoherentLabel l = t.labels[mode];
        if (!std::any_of(out.begin(), out.end(),
                         [&](CoherentLabel u) { return same_label(u, l); }))
            out.push_back(l);
    }
    return out;
}

Superposition Superposition::scaled(Cx factor) const {
    Superposition r = *this;
    for (Term& t : r.terms_) t.coeff *= factor;
    return r;
}

Cx inner(const Superposition& x, const Superposition& y) {
    if (x.n_modes() != y.n_modes())
        throw ModeMismatch("inner: operands have different mode counts");
    Cx s{};
    for (const Term& a : x.terms()) {
        for (const Term& b : y.terms()) {
            Cx w = std::conj(a.coeff) * b.coeff;
            for (int m = 0; m < x.n_modes(); ++m) w *= overlap(a.labels[m], b.labels[m]);
            s += w;
        }
    }
    return s;
}

Superposition normalize(const Superposition& x) {
    const double n2 = inner(x, x).real();
    if (n2 <= 1e-15) throw ZeroNorm("normalize: state has zero norm");
    return x.scaled(1.0 / std::sqrt(n2));
}

int OrthoBasis::index_of(CoherentLabel l) const {
    for (int i = 0; i < dim(); ++i)
        if (same_label(labels[i], l)) return i;
    throw LabelNotInBasis("coherent label is not part of this basis");
}

std::vector<Cx> OrthoBasis::coords(int i) const {
    std::vector<Cx> c(dim());
    for (int j = 0; j < dim(); ++j) c[j] = factor(j, i);
    return c;
}

OrthoBasis orthonormalize(std::span<const CoherentLabel> labels) {
    const int d = static_cast<int>(labels.size());
    if (d < 1 || d > 8) throw BadDims("orthonormalize: supported basis sizes are 1..8");
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (same_label(labels[i], labels[j]))
                throw GramIllConditioned("orthonormalize: duplicate labels");

    OrthoBasis b;
    b.labels.assign(labels.begin(), labels.end());
    b.gram = Matrix(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b.gram(i, j) = overlap(labels[i], labels[j]);

    // Cholesky G = L L^dagger; R = L^dagger is upper triangular with G = R^dagger R.
    // det(G) = prod of squared pivots; bail out when the span degenerates.
    Matrix low(d, d);
    double det = 1.0;
    for (int j = 0; j < d; ++j) {
        double diag = b.gram(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(low(j, k));
        if (diag <= 0.0) throw GramIllConditioned("orthonormalize: Gram matrix not positive definite");
        det *= diag;
        const double piv = std::sqrt(diag);
        low(j, j) = piv;
        for (int i = j + 1; i < d; ++i) {
            Cx s = b.gram(i, j);
            for (int k = 0; k < j; ++k) s -= low(i, k) * std::conj(low(j, k));
            low(i, j) = s / piv;
        }
    }
    if (det < 1e-12)
        throw GramIllConditioned("orthonormalize: det(G) below 1e-12, labels nearly dependent");
    b.factor = low.adjoint();
    return b;
}

Matrix coefficient_matrix(const Superposition& x, const OrthoBasis& basis1,
                          const OrthoBasis& basis2) {
    if (x.n_modes() != 2) throw ModeMismatch("coefficient_matrix: two-mode state required");
    Matrix a(basis1.dim(), basis2.dim());
    for (const Term& t : x.terms()) {
        const int i = basis1.index_of(t.labels[0]);
        const int j = basis2.index_of(t.labels[1]);
        for (int k = 0; k < basis1.dim(); ++k) {
            const Cx ck = t.coeff * basis1.factor(k, i);
            if (ck == Cx{}) continue;
            for (int l = 0; l < basis2.dim(); ++l) a(k, l) += ck * basis2.factor(l, j);
        }
    }
    return a;
}

std::vector<Cx> coefficient_tensor(const Superposition& x,
                                   std::span<const OrthoBasis> bases) {
    if (static_cast<int>(bases.size()) != x.n_modes())
        throw ModeMismatch("coefficient_tensor: one basis per mode required");
    size_t total = 1;
    for (const OrthoBasis& b : bases) total *= b.dim();
    std::vector<Cx> out(total);
    std::vector<Cx> partial, next;
    for (const Term& t : x.terms()) {
        partial.assign(1, t.coeff);
        for (int m = 0; m < x.n_modes(); ++m) {
            const OrthoBasis& b = bases[m];
            const int idx = b.index_of(t.labels[m]);
            next.assign(partial.size() * b.dim(), Cx{});
            for (size_t s = 0; s < partial.size(); ++s)
                for (int k = 0; k < b.dim(); ++k)
                    next[s * b.dim() + k] = partial[s] * b.factor(k, idx);
            partial.swap(next);
        }
        for (size_t s = 0; s < total; ++s) out[s] += partial[s];
    }
    return out;
}

}  // namespace ecs

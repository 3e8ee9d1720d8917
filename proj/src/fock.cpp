#include "ecs/fock.hpp"

#include <algorithm>
#include <cmath>

namespace ecs::fock {

int cutoff_for(double max_amp, double tol) {
    if (tol <= 0.0) throw DomainError("cutoff_for: tolerance must be positive");
    const double mean = max_amp * max_amp;
    double term = std::exp(-mean);  // P(n = 0)
    double cdf = term;
    int k = 0;
    while (1.0 - cdf >= tol) {
        ++k;
        term *= mean / k;
        cdf += term;
        if (k > 4096) throw ConvergenceFailure("cutoff_for: tail does not reach tolerance");
    }
    return k;
}

std::vector<Cx> coherent_amplitudes(CoherentLabel g, int cutoff) {
    std::vector<Cx> c(cutoff + 1);
    // Running product keeps the recursion stable at any cutoff; the e^{-|g|^2/2}
    // prefactor is folded in from the start so nothing overflows.
    c[0] = std::exp(-0.5 * std::norm(g.amp));
    for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * g.amp / std::sqrt(double(n));
    return c;
}

FockVector to_fock(const Superposition& x, int cutoff) {
    double max_amp = 0.0;
    for (const Term& t : x.terms())
        for (CoherentLabel l : t.labels) max_amp = std::max(max_amp, std::abs(l.amp));
    if (cutoff < cutoff_for(max_amp, 1e-12))
        throw CutoffTooSmall("to_fock: cutoff below the 1e-12 tail bound");

    FockVector out;
    out.n_modes = x.n_modes();
    out.cutoff = cutoff;
    const int d = cutoff + 1;
    size_t total = 1;
    for (int m = 0; m < out.n_modes; ++m) total *= d;
    out.amps.assign(total, Cx{});

    std::vector<Cx> partial, next;
    for (const Term& t : x.terms()) {
        partial.assign(1, t.coeff);
        for (int m = 0; m < out.n_modes; ++m) {
            const std::vector<Cx> c = coherent_amplitudes(t.labels[m], cutoff);
            next.assign(partial.size() * d, Cx{});
            for (size_t s = 0; s < partial.size(); ++s) {
                const Cx ps = partial[s];
                for (int n = 0; n < d; ++n) next[s * d + n] = ps * c[n];
            }
            partial.swap(next);
        }
        for (size_t s = 0; s < total; ++s) out.amps[s] += partial[s];
    }
    return out;
}

Cx oracle_inner(const Superposition& x, const Superposition& y, int cutoff) {
    if (x.n_modes() != y.n_modes()) throw ModeMismatch("oracle_inner: mode counts differ");
    const FockVector fx = to_fock(x, cutoff);
    const FockVector fy = to_fock(y, cutoff);
    Cx s{};
    for (size_t i = 0; i < fx.amps.size(); ++i) s += std::conj(fx.amps[i]) * fy.amps[i];
    return s;
}

namespace {

void check_keep(int n_modes, std::span<const int> keep) {
    if (keep.empty() || static_cast<int>(keep.size()) >= n_modes + 1)
        throw BadMode("partial trace: kept mode list invalid");
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n_modes) throw BadMode("partial trace: mode out of range");
        for (size_t j = i + 1; j < keep.size(); ++j)
            if (keep[i] == keep[j]) throw BadMode("partial trace: repeated mode");
    }
}

}  // namespace

Matrix oracle_partial_trace(const Superposition& x, std::span<const int> keep,
                            int cutoff) {
    check_keep(x.n_modes(), keep);
    const FockVector f = to_fock(x, cutoff);
    const int d = f.dim_per_mode();
    const int n = f.n_modes;

    std::vector<int> discarded;
    for (int m = 0; m < n; ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) discarded.push_back(m);

    // Mode-major strides of the flat amplitude index.
    std::vector<size_t> stride(n, 1);
    for (int m = n - 2; m >= 0; --m) stride[m] = stride[m + 1] * d;

    size_t dk = 1, de = 1;
    for (size_t i = 0; i < keep.size(); ++i) dk *= d;
    for (size_t i = 0; i < discarded.size(); ++i) de *= d;

    // Scatter amplitudes into a (kept x discarded) matrix, then rho = Psi Psi^dagger.
    Matrix psi(static_cast<int>(dk), static_cast<int>(de));
    std::vector<int> digit(n, 0);
    for (size_t flat = 0; flat < f.amps.size(); ++flat) {
        size_t r = flat;
        for (int m = 0; m < n; ++m) {
            digit[m] = static_cast<int>(r / stride[m]);
            r %= stride[m];
        }
        size_t ik = 0, ie = 0;
        for (int km : keep) ik = ik * d + digit[km];
        for (int em : discarded) ie = ie * d + digit[em];
        psi(static_cast<int>(ik), static_cast<int>(ie)) = f.amps[flat];
    }

    Matrix rho(static_cast<int>(dk), static_cast<int>(dk));
    for (size_t i = 0; i < dk; ++i) {
        for (size_t j = i; j < dk; ++j) {
            Cx s{};
            const Cx* ri = psi.row(static_cast<int>(i));
            const Cx* rj = psi.row(static_cast<int>(j));
            for (size_t e = 0; e < de; ++e) s += ri[e] * std::conj(rj[e]);
            rho(static_cast<int>(i), static_cast<int>(j)) = s;
            rho(static_cast<int>(j), static_cast<int>(i)) = std::conj(s);
        }
    }
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw ZeroNorm("oracle_partial_trace: zero-trace result");
    rho *= Cx{1.0 / tr, 0.0};
    return rho;
}

double oracle_negativity(const Superposition& x, std::span<const int> keep,
                         std::span<const int> transposed, int cutoff) {
    if (transposed.empty() || transposed.size() >= keep.size())
        throw BadSplit("oracle_negativity: split must be a proper bipartition of kept modes");
    for (int m : transposed)
        if (std::find(keep.begin(), keep.end(), m) == keep.end())
            throw BadSplit("oracle_negativity: transposed mode not among kept modes");

    Matrix rho = oracle_partial_trace(x, keep, cutoff);
    const int nk = static_cast<int>(keep.size());
    const int d = cutoff + 1;
    const size_t dk = static_cast<size_t>(rho.rows());

    std::vector<bool> flip(nk, false);
    for (int i = 0; i < nk; ++i)
        flip[i] = std::find(transposed.begin(), transposed.end(), keep[i]) != transposed.end();

    std::vector<size_t> kstride(nk, 1);
    for (int m = nk - 2; m >= 0; --m) kstride[m] = kstride[m + 1] * d;

    Matrix pt(static_cast<int>(dk), static_cast<int>(dk));
    std::vector<int> di(nk), dj(nk);
    for (size_t i = 0; i < dk; ++i) {
        size_t r = i;
        for (int m = 0; m < nk; ++m) { di[m] = static_cast<int>(r / kstride[m]); r %= kstride[m]; }
        for (size_t j = 0; j < dk; ++j) {
            size_t q = j;
            for (int m = 0; m < nk; ++m) { dj[m] = static_cast<int>(q / kstride[m]); q %= kstride[m]; }
            size_t si = 0, sj = 0;
            for (int m = 0; m < nk; ++m) {
                si = si * d + (flip[m] ? dj[m] : di[m]);
                sj = sj * d + (flip[m] ? di[m] : dj[m]);
            }
            pt(static_cast<int>(i), static_cast<int>(j)) = rho(static_cast<int>(si), static_cast<int>(sj));
        }
    }

    // High photon-number rows carry negligible weight; dropping rows whose
    // total norm is below tau perturbs each eigenvalue by at most the dropped
    // Frobenius mass (Weyl), far under the oracle's agreement tolerance.
    const double tau = 1e-12;
    std::vector<int> live;
    for (size_t i = 0; i < dk; ++i) {
        double w = 0.0;
        const Cx* r = pt.row(static_cast<int>(i));
        for (size_t j = 0; j < dk; ++j) w += std::norm(r[j]);
        if (std::sqrt(w) > tau) live.push_back(static_cast<int>(i));
    }
    Matrix sub(static_cast<int>(live.size()), static_cast<int>(live.size()));
    for (size_t a = 0; a < live.size(); ++a)
        for (size_t b = 0; b < live.size(); ++b) sub(static_cast<int>(a), static_cast<int>(b)) = pt(live[a], live[b]);

    EigenSystem es = jacobi_eigensystem(std::move(sub));
    double neg = 0.0;
    for (double v : es.values)
        if (v < -1e-12) neg -= v;
    return neg;
}

}  // namespace ecs::fock

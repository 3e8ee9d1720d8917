#include "ecs/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ecs/protocol.hpp"

namespace ecs {

Spectrum hermitian_eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() > 64)
        throw BadDims("hermitian_eigenvalues: square matrices up to 64x64");
    if (m.hermitian_defect() > 1e-10)
        throw NotHermitian("hermitian_eigenvalues: defect above 1e-10");
    EigenSystem es = jacobi_eigensystem(m);
    Spectrum s;
    s.eigenvalues.assign(es.values.rbegin(), es.values.rend());
    return s;
}

double pure_concurrence(const Matrix& a) {
    double norm2 = 0.0;
    for (const Cx& v : a.data()) norm2 += std::norm(v);
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw NotNormalized("pure_concurrence: coefficients are not unit-normalized");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.rows(); ++j)
            for (int k = 0; k < a.cols(); ++k)
                for (int l = k + 1; l < a.cols(); ++l)
                    s += std::norm(a(i, k) * a(j, l) - a(i, l) * a(j, k));
    return 2.0 * std::sqrt(s);
}

double wootters_concurrence(const DensityMatrix& rho) {
    if (rho.dims() != std::vector<int>{2, 2})
        throw BadDims("wootters_concurrence: two-qubit density matrix required");
    const Matrix& r = rho.matrix();

    Matrix yy(4, 4);  // sigma_y (x) sigma_y, real in the local basis
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const Matrix rt = yy * r.conj() * yy;
    const Matrix s = hermitian_sqrt(r);
    Matrix h = s * rt * s;
    h.hermitize();

    EigenSystem es = jacobi_eigensystem(std::move(h));
    std::vector<double> lam(4);
    for (int i = 0; i < 4; ++i) {
        // Rounding noise in h sits at ~1e-15 and would surface as 1e-8-scale
        // square roots; values below the floor are genuine zeros.
        double v = es.values[3 - i];
        lam[i] = v > 1e-12 ? std::sqrt(v) : 0.0;
    }
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

namespace {

Matrix partial_transpose(const DensityMatrix& rho, std::span<const int> transposed) {
    const auto& dims = rho.dims();
    const int nm = static_cast<int>(dims.size());
    if (transposed.empty() || static_cast<int>(transposed.size()) >= nm)
        throw BadSplit("negativity: split must be a proper bipartition of the modes");
    std::vector<bool> flip(nm, false);
    for (int m : transposed) {
        if (m < 0 || m >= nm) throw BadSplit("negativity: split mode out of range");
        if (flip[m]) throw BadSplit("negativity: repeated split mode");
        flip[m] = true;
    }

    std::vector<int> stride(nm, 1);
    for (int m = nm - 2; m >= 0; --m) stride[m] = stride[m + 1] * dims[m + 1];
    const int total = rho.total_dim();

    Matrix pt(total, total);
    std::vector<int> di(nm), dj(nm);
    for (int i = 0; i < total; ++i) {
        int r = i;
        for (int m = 0; m < nm; ++m) { di[m] = r / stride[m]; r %= stride[m]; }
        for (int j = 0; j < total; ++j) {
            int q = j;
            for (int m = 0; m < nm; ++m) { dj[m] = q / stride[m]; q %= stride[m]; }
            int si = 0, sj = 0;
            for (int m = 0; m < nm; ++m) {
                si = si * dims[m] + (flip[m] ? dj[m] : di[m]);
                sj = sj * dims[m] + (flip[m] ? di[m] : dj[m]);
            }
            pt(i, j) = rho.matrix()(si, sj);
        }
    }
    return pt;
}

}  // namespace

double negativity(const DensityMatrix& rho, std::span<const int> transposed_modes) {
    Matrix pt = partial_transpose(rho, transposed_modes);
    EigenSystem es = jacobi_eigensystem(std::move(pt));
    double neg = 0.0, trace_norm = 0.0;
    for (double v : es.values) {
        trace_norm += std::abs(v);
        if (v < -1e-12) neg -= v;
    }
    const double alt = 0.5 * (trace_norm - 1.0);
    if (std::abs(neg - alt) > 1e-10)
        throw NumericalError("negativity: eigenvalue route and trace-norm route disagree");
    return neg;
}

double c2_closed_form(Cx ratio, double p) {
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("c2_closed_form: p must lie in [0,1)");
    const double z = std::abs(ratio);
    return 2.0 * z * (1.0 - p * p) /
           (1.0 + z * z - 2.0 * ratio.real() * p * p);
}

namespace {

double clamp_radicand(double v, const char* where) {
    if (v < -1e-9) throw NegativeRadicand(std::string(where) + ": radicand below clamp window");
    return v < 0.0 ? 0.0 : v;
}

}  // namespace

double c3_reference_curve(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("c3_reference_curve: p must lie in [0,1]");
    const double p2 = p * p, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
    const double p10 = p8 * p2, p12 = p8 * p4, p14 = p8 * p6;
    const double radicand = 4.64461 + 14.098 * p14 - 17.6206 * p12 - 6.05322 * p10 +
                            24.965 * p8 - 22.5563 * p6 + 2.59035 * p4 - 0.0677901 * p2;
    const double denom = 1.99954 * p8 + 7.28968 * p2 + 3.8224;
    return 2.0 * std::sqrt(clamp_radicand(radicand, "c3_reference_curve")) / denom;
}

double two_mode_concurrence(const Superposition& x) {
    if (x.n_modes() != 2) throw ModeMismatch("two_mode_concurrence: two-mode state required");
    const OrthoBasis b0 = orthonormalize(x.mode_labels(0));
    const OrthoBasis b1 = orthonormalize(x.mode_labels(1));
    return pure_concurrence(coefficient_matrix(x, b0, b1));
}

MonogamyReport monogamy_closed_forms(double pprime, double eta) {
    if (!(pprime > 0.0 && pprime < 1.0))
        throw DomainError("monogamy_closed_forms: p' must lie strictly inside (0,1)");
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("monogamy_closed_forms: eta must lie in (0,1]");
    const double pe = std::pow(pprime, 2.0 * eta);
    const double c_ab = std::pow(pprime, 3.0 + eta) * (1.0 - pe) /
                        (std::pow(pprime, 3.0 * eta) - std::pow(pprime, 6.0));
    const double rad = clamp_radicand(
        (1.0 - pe) * (1.0 - std::pow(pprime, 2.0 * (3.0 - eta))), "monogamy_closed_forms");
    const double c_abd = std::sqrt(rad) / (1.0 - std::pow(pprime, 6.0 - 3.0 * eta));
    return {c_ab, c_ab, c_abd, c_abd * c_abd - 2.0 * c_ab * c_ab};
}

namespace {

// (|-a,-a,-a> - |a,a,a>)/sqrt(2-2p'^3) built through the beam splitters.
Superposition three_mode_family(double pprime) {
    const double alpha = std::sqrt(-1.5 * std::log(pprime));
    std::vector<Term> terms = {
        {Cx{1.0, 0.0}, {CoherentLabel{-alpha}, CoherentLabel{0.0}, CoherentLabel{0.0}}},
        {Cx{-1.0, 0.0}, {CoherentLabel{alpha}, CoherentLabel{0.0}, CoherentLabel{0.0}}},
    };
    Superposition s = normalize(Superposition(3, std::move(terms)));
    s = beamsplitter(s, 0, 1, std::acos(1.0 / std::sqrt(3.0)));
    s = beamsplitter(s, 1, 2, std::numbers::pi / 4.0);
    return s;
}

}  // namespace

MonogamyReport monogamy_pipeline(double pprime, double eta) {
    if (!(pprime > 0.0 && pprime < 1.0))
        throw DomainError("monogamy_pipeline: p' must lie strictly inside (0,1)");
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("monogamy_pipeline: eta must lie in (0,1]");

    const Superposition pure = three_mode_family(pprime);
    const int all_modes[] = {0, 1, 2};
    const Superposition noisy = lossy_channel(pure, all_modes, NoiseParam{eta});

    const int ab[] = {0, 1};
    const int ad[] = {0, 2};
    const double c_ab = wootters_concurrence(trace_out(noisy, ab));
    const double c_ad = wootters_concurrence(trace_out(noisy, ad));

    double c_abd;
    if (eta == 1.0) {
        std::vector<OrthoBasis> bases;
        for (int m = 0; m < 3; ++m) bases.push_back(orthonormalize(pure.mode_labels(m)));
        const std::vector<Cx> t = coefficient_tensor(pure, bases);
        Matrix a(2, 4);  // A rows, (B,D) columns
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = t[static_cast<size_t>(i) * 4 + j];
        c_abd = pure_concurrence(a);
    } else {
        c_abd = monogamy_closed_forms(pprime, eta).c_abd;
    }
    return {c_ab, c_ad, c_abd, c_abd * c_abd - c_ab * c_ab - c_ad * c_ad};
}

ViolationPair qutrit_violation_example() {
    // Far-apart labels realize the orthogonal limit to machine precision.
    const double big = 8.0;
    const CoherentLabel l0{0.0}, l1{big}, l2{-big};
    const double w = 1.0;
    std::vector<Term> terms = {
        {Cx{+w, 0}, {l0, l1, l2}}, {Cx{-w, 0}, {l0, l2, l1}},
        {Cx{+w, 0}, {l2, l0, l1}}, {Cx{-w, 0}, {l2, l1, l0}},
        {Cx{+w, 0}, {l1, l2, l0}}, {Cx{-w, 0}, {l1, l0, l2}},
    };
    const Superposition psi = normalize(Superposition(3, std::move(terms)));

    const std::vector<CoherentLabel> labels = {l0, l1, l2};
    const OrthoBasis basis = orthonormalize(labels);
    const std::vector<OrthoBasis> bases = {basis, basis, basis};
    const std::vector<Cx> t = coefficient_tensor(psi, bases);
    auto at = [&](int i, int j, int k) { return t[(static_cast<size_t>(i) * 3 + j) * 3 + k]; };

    Matrix a_bd(3, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) a_bd(i, j * 3 + k) = at(i, j, k);
    const double c_abd = pure_concurrence(a_bd);

    // Average pure concurrence over the branches of a projective measurement
    // on the traced mode. Tight for this state: the support is the
    // antisymmetric subspace, whose pure states all have concurrence >= 1.
    auto branch_average = [&](bool trace_d) {
        double acc = 0.0;
        for (int b = 0; b < 3; ++b) {
            Matrix m(3, 3);
            double w2 = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const Cx v = trace_d ? at(i, j, b) : at(i, b, j);
                    m(i, j) = v;
                    w2 += std::norm(v);
                }
            if (w2 < 1e-30) continue;
            m *= Cx{1.0 / std::sqrt(w2), 0.0};
            acc += w2 * pure_concurrence(m);
        }
        return acc;
    };
    const double c_ab = branch_average(true);
    const double c_ad = branch_average(false);
    return {c_ab * c_ab + c_ad * c_ad, c_abd * c_abd};
}

}  // namespace ecs

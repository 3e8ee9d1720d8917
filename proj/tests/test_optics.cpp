#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ecs/entanglement.hpp"
#include "ecs/fock.hpp"

using ecs::CoherentLabel;
using ecs::Cx;
using ecs::EcsKind;
using ecs::Superposition;
using ecs::Term;

namespace {

// The published entries of the decohered qubit family matrix, without the
// global 1/(2-2p^2) factor.
ecs::Matrix decohered_qubit_reference(double p, double eta) {
    const double a11 = 1.0 - 2.0 * p * p + std::pow(p, 4.0 * eta);
    const double a12 = std::pow(p, -eta) * std::sqrt(1.0 - std::pow(p, 2.0 * eta)) *
                       (-p * p + std::pow(p, 4.0 * eta));
    const double a14 = p * p - std::pow(p, 2.0 - 2.0 * eta) + std::pow(p, 2.0 * eta) -
                       std::pow(p, 4.0 * eta);
    const double a22 = std::pow(p, 2.0 * eta) - std::pow(p, 4.0 * eta);
    const double a24 = std::pow(p, eta) * std::pow(1.0 - std::pow(p, 2.0 * eta), 1.5);
    const double a44 = std::pow(1.0 - std::pow(p, 2.0 * eta), 2.0);
    ecs::Matrix m(4, 4);
    const double rows[4][4] = {{a11, a12, a12, a14},
                               {a12, a22, a22, a24},
                               {a12, a22, a22, a24},
                               {a14, a24, a24, a44}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return m;
}

Superposition decohered_qubit(double p, double eta) {
    const double alpha = std::sqrt(-std::log(p));
    const std::vector<Cx> w{{-1.0, 0.0}, {1.0, 0.0}};
    const Superposition s = ecs::make_ecs(EcsKind::qubit, alpha, 0.0, w);
    const int both[] = {0, 1};
    return ecs::lossy_channel(s, both, ecs::NoiseParam{eta});
}

}  // namespace

TEST_CASE("50-50 beam splitter splits a product state") {
    const double a = 1.3;
    const Superposition in = Superposition::product(
        std::vector<CoherentLabel>{CoherentLabel{a}, CoherentLabel{0.0}});
    const Superposition out = ecs::beamsplitter(in, 0, 1, std::numbers::pi / 4.0);
    CHECK(ecs::same_label(out.terms()[0].labels[0], CoherentLabel{a / std::sqrt(2.0)}));
    CHECK(ecs::same_label(out.terms()[0].labels[1], CoherentLabel{a / std::sqrt(2.0)}));

    const Superposition id = ecs::beamsplitter(in, 0, 1, 0.0);
    CHECK(ecs::same_label(id.terms()[0].labels[0], CoherentLabel{a}));
    CHECK(ecs::same_label(id.terms()[0].labels[1], CoherentLabel{0.0}));

    CHECK_THROWS_AS(ecs::beamsplitter(in, 0, 0, 1.0), ecs::BadMode);
    CHECK_THROWS_AS(ecs::beamsplitter(in, 0, 2, 1.0), ecs::BadMode);
}

TEST_CASE("two beam splitters produce the even three-mode split") {
    const double a = 1.7;
    const Superposition in = Superposition::product(std::vector<CoherentLabel>{
        CoherentLabel{a}, CoherentLabel{0.0}, CoherentLabel{0.0}});
    Superposition out = ecs::beamsplitter(in, 0, 1, std::acos(1.0 / std::sqrt(3.0)));
    out = ecs::beamsplitter(out, 1, 2, std::numbers::pi / 4.0);
    for (int m = 0; m < 3; ++m)
        CHECK(std::abs(out.terms()[0].labels[m].amp - a / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("beam splitter conserves per-term photon number and inner products") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Term> tx, ty;
        for (int t = 0; t < 3; ++t) {
            tx.push_back(Term{Cx{u(rng), u(rng)},
                              {CoherentLabel{Cx{u(rng), u(rng)}}, CoherentLabel{Cx{u(rng), u(rng)}}}});
            ty.push_back(Term{Cx{u(rng), u(rng)},
                              {CoherentLabel{Cx{u(rng), u(rng)}}, CoherentLabel{Cx{u(rng), u(rng)}}}});
        }
        const Superposition x(2, tx), y(2, ty);
        const double theta = u(rng);
        const Superposition bx = ecs::beamsplitter(x, 0, 1, theta);
        const Superposition by = ecs::beamsplitter(y, 0, 1, theta);
        for (size_t k = 0; k < x.terms().size(); ++k) {
            const double before =
                std::norm(x.terms()[k].labels[0].amp) + std::norm(x.terms()[k].labels[1].amp);
            const double after =
                std::norm(bx.terms()[k].labels[0].amp) + std::norm(bx.terms()[k].labels[1].amp);
            CHECK(std::abs(before - after) < 1e-12);
        }
        CHECK(std::abs(inner(x, y) - inner(bx, by)) < 1e-12);
    }
}

TEST_CASE("make_ecs families") {
    const double alpha = 1.1;
    const double b = alpha / std::sqrt(2.0);
    const double p = ecs::overlap(b, -b).real();

    const std::vector<Cx> wq{{-1.0, 0.0}, {1.0, 0.0}};
    const Superposition qubit = ecs::make_ecs(EcsKind::qubit, alpha, 0.0, wq);
    const double m = 2.0 - 2.0 * p * p;
    CHECK(std::abs(qubit.terms()[0].coeff - Cx{-1.0 / std::sqrt(m), 0.0}) < 1e-13);
    CHECK(std::abs(qubit.terms()[1].coeff - Cx{1.0 / std::sqrt(m), 0.0}) < 1e-13);
    CHECK(ecs::same_label(qubit.terms()[0].labels[0], CoherentLabel{b}));
    CHECK(ecs::same_label(qubit.terms()[1].labels[0], CoherentLabel{-b}));

    const std::vector<Cx> w3{{1.0, 0.0}, {1.35, 0.0}, {1.0, 0.0}};
    const Superposition qutrit = ecs::make_ecs(EcsKind::qutrit, alpha, 0.4, w3);
    CHECK(qutrit.terms().size() == 3);
    CHECK(ecs::same_label(qutrit.terms()[0].labels[0], CoherentLabel{(2.0 * alpha + 0.4) / std::sqrt(2.0)}));
    CHECK(ecs::same_label(qutrit.terms()[1].labels[0], CoherentLabel{0.4 / std::sqrt(2.0)}));
    CHECK(inner(qutrit, qutrit).real() == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<Cx> w4{{-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}};
    const Superposition qufit = ecs::make_ecs(EcsKind::qufit, alpha, 0.0, w4);
    CHECK(qufit.terms().size() == 4);
    CHECK(inner(qufit, qufit).real() == doctest::Approx(1.0).epsilon(1e-12));

    // cancelling weights on coincident labels leave nothing to normalize
    CHECK_THROWS_AS(ecs::make_ecs(EcsKind::qubit, 0.0, 0.0, wq), ecs::ZeroNorm);
}

TEST_CASE("lossy channel endpoints") {
    const Superposition s = decohered_qubit(0.5, 1.0);
    CHECK(s.n_modes() == 4);
    for (const auto& t : s.terms()) {
        CHECK(ecs::same_label(t.labels[2], CoherentLabel{0.0}));
        CHECK(ecs::same_label(t.labels[3], CoherentLabel{0.0}));
    }

    const Superposition dead = decohered_qubit(0.5, 0.0);
    const double b = std::sqrt(-std::log(0.5)) / std::sqrt(2.0);
    for (const auto& t : dead.terms()) {
        CHECK(ecs::same_label(t.labels[0], CoherentLabel{0.0}));
        CHECK(std::abs(std::abs(t.labels[2].amp) - b) < 1e-12);
    }

    // generic eta keeps term count and splits amplitude between system and environment
    const double eta = 0.37;
    const Superposition part = decohered_qubit(0.5, eta);
    CHECK(part.terms().size() == 2);
    for (const auto& t : part.terms()) {
        CHECK(std::abs(t.labels[0].amp - std::sqrt(eta) * t.labels[2].amp / std::sqrt(1 - eta)) <
              1e-12);
    }

    const int bad[] = {0, 5};
    CHECK_THROWS_AS(
        ecs::lossy_channel(decohered_qubit(0.5, 1.0), bad, ecs::NoiseParam{0.5}),
        ecs::BadMode);
    CHECK_THROWS_AS(ecs::NoiseParam{1.5}, ecs::DomainError);
}

TEST_CASE("trace_out reproduces the published decohered qubit matrix") {
    for (double p : {0.3, 0.5, 0.8}) {
        for (double eta : {0.1, 0.5, 0.9}) {
            const Superposition s = decohered_qubit(p, eta);
            const int keep[] = {0, 1};
            const ecs::DensityMatrix rho = ecs::trace_out(s, keep);
            const ecs::Matrix ref = decohered_qubit_reference(p, eta);
            const double prefactor = 1.0 / (2.0 - 2.0 * p * p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    CHECK(std::abs(rho.matrix()(i, j) - prefactor * ref(i, j)) < 1e-12);
        }
    }

    // spot values at p = 1/2, eta = 1/2: the a12/a14 coherences vanish
    const Superposition s = decohered_qubit(0.5, 0.5);
    const int keep[] = {0, 1};
    const ecs::DensityMatrix rho = ecs::trace_out(s, keep);
    const double pre = 2.0 - 2.0 * 0.25;
    CHECK(std::abs(rho.matrix()(0, 1)) < 1e-13);
    CHECK(std::abs(rho.matrix()(0, 3)) < 1e-13);
    CHECK(rho.matrix()(0, 0).real() * pre == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rho.matrix()(1, 1).real() * pre == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rho.matrix()(1, 3).real() * pre == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rho.matrix()(3, 3).real() * pre == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("trace_out of the qutrit family carries the published environment factors") {
    const double p = 0.55, eta = 0.35;
    const double alpha = std::sqrt(-std::log(p));
    const std::vector<Cx> w{{1.0, 0.0}, {1.35, 0.0}, {1.0, 0.0}};
    Superposition s = ecs::make_ecs(EcsKind::qutrit, alpha, 0.0, w);
    const int both[] = {0, 1};
    s = ecs::lossy_channel(s, both, ecs::NoiseParam{eta});

    // environment overlaps between the omega/delta and omega/gamma branches
    const double a_factor =
        (ecs::overlap(s.terms()[1].labels[2], s.terms()[0].labels[2]) *
         ecs::overlap(s.terms()[1].labels[3], s.terms()[0].labels[3]))
            .real();
    const double d_factor =
        (ecs::overlap(s.terms()[2].labels[2], s.terms()[0].labels[2]) *
         ecs::overlap(s.terms()[2].labels[3], s.terms()[0].labels[3]))
            .real();
    CHECK(a_factor == doctest::Approx(std::pow(p, 2.0 * (1.0 - eta))).epsilon(1e-12));
    CHECK(d_factor == doctest::Approx(std::pow(p, 8.0 * (1.0 - eta))).epsilon(1e-12));

    const ecs::DensityMatrix rho = ecs::trace_out(s, both);
    rho.validate();
    CHECK(rho.dims() == std::vector<int>{3, 3});
}

TEST_CASE("trace_out invariants: hermitian, unit trace, PSD, purity endpoints") {
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> up(0.25, 0.85), ue(0.05, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double p = up(rng), eta = ue(rng);
        const Superposition s = decohered_qubit(p, eta);
        const int keep[] = {0, 1};
        const ecs::DensityMatrix rho = ecs::trace_out(s, keep);
        CHECK_NOTHROW(rho.validate());
    }

    // eta = 1: rank-one projector
    const Superposition pure = decohered_qubit(0.5, 1.0);
    const int keep[] = {0, 1};
    const ecs::DensityMatrix rho1 = ecs::trace_out(pure, keep);
    const ecs::Matrix sq = rho1.matrix() * rho1.matrix();
    CHECK((sq - rho1.matrix()).frobenius_norm() < 1e-10);
    const auto es = ecs::jacobi_eigensystem(rho1.matrix());
    CHECK(es.values.back() == doctest::Approx(1.0).epsilon(1e-10));

    // eta = 0: everything decoheres to the vacuum product
    const Superposition dead = decohered_qubit(0.5, 0.0);
    const ecs::DensityMatrix rho0 = ecs::trace_out(dead, keep);
    CHECK(rho0.dims() == std::vector<int>{1, 1});
    CHECK(std::abs(rho0.matrix()(0, 0) - Cx{1.0, 0.0}) < 1e-12);
    const int second[] = {1};
    CHECK(ecs::negativity(rho0, second) < 1e-10);
}

TEST_CASE("trace_out agrees entrywise with the Fock oracle") {
    const double p = 0.5, eta = 0.6;
    const Superposition s = decohered_qubit(p, eta);
    const int keep[] = {0, 1};
    const ecs::DensityMatrix rho = ecs::trace_out(s, keep);

    const int cutoff = ecs::fock::cutoff_for(1.0, 1e-12);
    const ecs::Matrix oracle = ecs::fock::oracle_partial_trace(s, keep, cutoff);

    // Basis alignment: orthonormal kets in Fock space are F R^{-1}, columns of
    // F being the coherent label amplitudes.
    const auto& basis = rho.bases()[0];
    const int d = basis.dim();
    const int fdim = cutoff + 1;
    ecs::Matrix f(fdim, d);
    for (int c = 0; c < d; ++c) {
        const auto amps = ecs::fock::coherent_amplitudes(basis.labels[c], cutoff);
        for (int n = 0; n < fdim; ++n) f(n, c) = amps[n];
    }
    const ecs::Matrix kets = f * ecs::upper_triangular_inverse(basis.factor);
    // two-mode embedding
    ecs::Matrix embed(fdim * fdim, d * d);
    for (int c1 = 0; c1 < d; ++c1)
        for (int c2 = 0; c2 < d; ++c2)
            for (int n1 = 0; n1 < fdim; ++n1)
                for (int n2 = 0; n2 < fdim; ++n2)
                    embed(n1 * fdim + n2, c1 * d + c2) = kets(n1, c1) * kets(n2, c2);
    const ecs::Matrix predicted = embed * rho.matrix() * embed.adjoint();
    double worst = 0.0;
    for (int i = 0; i < predicted.rows(); ++i)
        for (int j = 0; j < predicted.cols(); ++j)
            worst = std::max(worst, std::abs(predicted(i, j) - oracle(i, j)));
    CHECK(worst < 1e-8);
}

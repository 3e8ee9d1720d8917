#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "ecs/entanglement.hpp"
#include "ecs/figures.hpp"
#include "ecs/fock.hpp"
#include "ecs/protocol.hpp"

namespace py = pybind11;

namespace {

using ecs::Cx;

py::array_t<Cx> matrix_to_numpy(const ecs::Matrix& m) {
    py::array_t<Cx> out({m.rows(), m.cols()});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return out;
}

ecs::Matrix numpy_to_matrix(const py::array_t<Cx, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ecs::BadDims("expected a 2-d array");
    ecs::Matrix m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = r(i, j);
    return m;
}

ecs::EcsKind kind_from_string(const std::string& name) {
    if (name == "qubit") return ecs::EcsKind::qubit;
    if (name == "qutrit") return ecs::EcsKind::qutrit;
    if (name == "qufit") return ecs::EcsKind::qufit;
    throw ecs::DomainError("unknown family kind: " + name);
}

ecs::MeasureKind measure_from_string(const std::string& name) {
    if (name == "wootters" || name == "concurrence") return ecs::MeasureKind::wootters;
    if (name == "negativity") return ecs::MeasureKind::negativity;
    throw ecs::DomainError("unknown measure: " + name);
}

std::vector<ecs::CoherentLabel> to_labels(const std::vector<Cx>& amps) {
    return {amps.begin(), amps.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entangled coherent state toolkit (compiled core)";

    py::register_exception<ecs::Error>(m, "Error");

    py::class_<ecs::Superposition>(m, "Superposition")
        .def(py::init([](int n_modes, const std::vector<std::pair<Cx, std::vector<Cx>>>& terms) {
                 std::vector<ecs::Term> ts;
                 for (const auto& [c, labels] : terms) ts.push_back({c, to_labels(labels)});
                 return ecs::Superposition(n_modes, std::move(ts));
             }),
             py::arg("n_modes"), py::arg("terms"),
             "terms: list of (coefficient, [label per mode])")
        .def_property_readonly("n_modes", &ecs::Superposition::n_modes)
        .def("terms",
             [](const ecs::Superposition& s) {
                 std::vector<std::pair<Cx, std::vector<Cx>>> out;
                 for (const auto& t : s.terms()) {
                     std::vector<Cx> labels;
                     for (auto l : t.labels) labels.push_back(l.amp);
                     out.emplace_back(t.coeff, std::move(labels));
                 }
                 return out;
             })
        .def("mode_labels", [](const ecs::Superposition& s, int mode) {
            std::vector<Cx> out;
            for (auto l : s.mode_labels(mode)) out.push_back(l.amp);
            return out;
        });

    py::class_<ecs::OrthoBasis>(m, "OrthoBasis")
        .def_property_readonly("labels",
                               [](const ecs::OrthoBasis& b) {
                                   std::vector<Cx> out;
                                   for (auto l : b.labels) out.push_back(l.amp);
                                   return out;
                               })
        .def_property_readonly("gram",
                               [](const ecs::OrthoBasis& b) { return matrix_to_numpy(b.gram); })
        .def_property_readonly("factor",
                               [](const ecs::OrthoBasis& b) { return matrix_to_numpy(b.factor); })
        .def_property_readonly("dim", &ecs::OrthoBasis::dim);

    py::class_<ecs::DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("dims", &ecs::DensityMatrix::dims)
        .def("matrix", [](const ecs::DensityMatrix& d) { return matrix_to_numpy(d.matrix()); })
        .def("validate", &ecs::DensityMatrix::validate);

    py::class_<ecs::MonogamyReport>(m, "MonogamyReport")
        .def_readonly("c_ab", &ecs::MonogamyReport::c_ab)
        .def_readonly("c_ad", &ecs::MonogamyReport::c_ad)
        .def_readonly("c_abd", &ecs::MonogamyReport::c_abd)
        .def_readonly("tau", &ecs::MonogamyReport::tau)
        .def("__repr__", [](const ecs::MonogamyReport& r) {
            return "MonogamyReport(c_ab=" + std::to_string(r.c_ab) +
                   ", c_ad=" + std::to_string(r.c_ad) + ", c_abd=" + std::to_string(r.c_abd) +
                   ", tau=" + std::to_string(r.tau) + ")";
        });

    m.def(
        "overlap", [](Cx a, Cx b) { return ecs::overlap(a, b); }, py::arg("a"), py::arg("b"),
        "exact coherent-state overlap <a|b>");
    m.def(
        "product",
        [](const std::vector<Cx>& labels) { return ecs::Superposition::product(to_labels(labels)); },
        py::arg("labels"), "single-term product state");
    m.def("inner", &ecs::inner, py::arg("x"), py::arg("y"));
    m.def("normalize", &ecs::normalize, py::arg("x"));
    m.def(
        "orthonormalize",
        [](const std::vector<Cx>& labels) { return ecs::orthonormalize(to_labels(labels)); },
        py::arg("labels"));
    m.def(
        "coefficient_matrix",
        [](const ecs::Superposition& x, const ecs::OrthoBasis& b1, const ecs::OrthoBasis& b2) {
            return matrix_to_numpy(ecs::coefficient_matrix(x, b1, b2));
        },
        py::arg("x"), py::arg("basis1"), py::arg("basis2"));

    m.def(
        "make_ecs",
        [](const std::string& kind, Cx alpha, Cx beta, const std::vector<Cx>& coeffs) {
            return ecs::make_ecs(kind_from_string(kind), alpha, beta, coeffs);
        },
        py::arg("kind"), py::arg("alpha"), py::arg("beta") = Cx{0.0, 0.0}, py::arg("coeffs"));
    m.def("beamsplitter", &ecs::beamsplitter, py::arg("x"), py::arg("i"), py::arg("j"),
          py::arg("theta"));
    m.def(
        "lossy_channel",
        [](const ecs::Superposition& x, const std::vector<int>& modes, double eta) {
            return ecs::lossy_channel(x, modes, ecs::NoiseParam{eta});
        },
        py::arg("x"), py::arg("modes"), py::arg("eta"));
    m.def(
        "trace_out",
        [](const ecs::Superposition& x, const std::vector<int>& keep) {
            return ecs::trace_out(x, keep);
        },
        py::arg("x"), py::arg("keep"));

    m.def(
        "hermitian_eigenvalues",
        [](const py::array_t<Cx, py::array::c_style | py::array::forcecast>& a) {
            return ecs::hermitian_eigenvalues(numpy_to_matrix(a)).eigenvalues;
        },
        py::arg("matrix"), "descending real spectrum via cyclic Jacobi");
    m.def(
        "pure_concurrence",
        [](const py::array_t<Cx, py::array::c_style | py::array::forcecast>& a) {
            return ecs::pure_concurrence(numpy_to_matrix(a));
        },
        py::arg("coefficients"));
    m.def("two_mode_concurrence", &ecs::two_mode_concurrence, py::arg("x"));
    m.def("wootters_concurrence", &ecs::wootters_concurrence, py::arg("rho"));
    m.def(
        "negativity",
        [](const ecs::DensityMatrix& rho, const std::vector<int>& transposed) {
            return ecs::negativity(rho, transposed);
        },
        py::arg("rho"), py::arg("transposed_modes"));

    m.def("c2_closed_form", &ecs::c2_closed_form, py::arg("ratio"), py::arg("p"));
    m.def("c3_reference_curve", &ecs::c3_reference_curve, py::arg("p"));
    m.def("monogamy_closed_forms", &ecs::monogamy_closed_forms, py::arg("pprime"), py::arg("eta"));
    m.def("monogamy_pipeline", &ecs::monogamy_pipeline, py::arg("pprime"), py::arg("eta"));
    m.def("qutrit_violation_example", [] {
        const ecs::ViolationPair v = ecs::qutrit_violation_example();
        return std::make_pair(v.lhs, v.rhs);
    });
    m.def(
        "family_measure",
        [](const std::string& kind, const std::string& measure, double p, double eta) {
            return ecs::family_measure(kind_from_string(kind), measure_from_string(measure), p,
                                       eta);
        },
        py::arg("kind"), py::arg("measure"), py::arg("p"), py::arg("eta"));

    m.def(
        "generate_coefficients",
        [](const std::vector<Cx>& eps, Cx alpha) {
            const int rounds = static_cast<int>(eps.size()) - 1;
            const ecs::Superposition out = ecs::run_recipe(
                ecs::canonical_recipe(rounds, eps, alpha), ecs::CoherentLabel{alpha});
            std::vector<ecs::Term> terms = out.terms();
            std::sort(terms.begin(), terms.end(), [](const ecs::Term& x, const ecs::Term& y) {
                if (x.labels[0].amp.real() != y.labels[0].amp.real())
                    return x.labels[0].amp.real() > y.labels[0].amp.real();
                return x.labels[0].amp.imag() > y.labels[0].amp.imag();
            });
            const Cx divisor = rounds == 1 ? terms.back().coeff : terms.front().coeff;
            std::vector<std::pair<Cx, Cx>> pairs;  // (label, weight)
            for (const auto& t : terms) pairs.emplace_back(t.labels[0].amp, t.coeff / divisor);
            return pairs;
        },
        py::arg("eps"), py::arg("alpha") = Cx{1.0, 0.0},
        "labels and weights of the generated superposition, in the generation convention");

    m.def("cutoff_for", &ecs::fock::cutoff_for, py::arg("max_amp"), py::arg("tol"));
    m.def("oracle_inner", &ecs::fock::oracle_inner, py::arg("x"), py::arg("y"), py::arg("cutoff"));
    m.def(
        "oracle_negativity",
        [](const ecs::Superposition& x, const std::vector<int>& keep,
           const std::vector<int>& transposed, int cutoff) {
            return ecs::fock::oracle_negativity(x, keep, transposed, cutoff);
        },
        py::arg("x"), py::arg("keep"), py::arg("transposed"), py::arg("cutoff"));
    m.def(
        "oracle_partial_trace",
        [](const ecs::Superposition& x, const std::vector<int>& keep, int cutoff) {
            return matrix_to_numpy(ecs::fock::oracle_partial_trace(x, keep, cutoff));
        },
        py::arg("x"), py::arg("keep"), py::arg("cutoff"));

#ifdef VERSION_INFO
#define ECS_STR2(x) #x
#define ECS_STR(x) ECS_STR2(x)
    m.attr("__version__") = ECS_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}

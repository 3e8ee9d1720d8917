#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ecs/figures.hpp"

using ecs::EcsKind;
using ecs::MeasureKind;
using ecs::SweepSpec;

TEST_CASE("family_measure endpoints") {
    // lossless endpoints recover the pure-state values
    CHECK(std::abs(ecs::family_measure(EcsKind::qubit, MeasureKind::wootters, 0.5, 1.0) - 1.0) <
          1e-8);
    CHECK(std::abs(ecs::family_measure(EcsKind::qubit, MeasureKind::negativity, 0.5, 1.0) - 0.5) <
          1e-8);
    // full loss leaves a product state
    CHECK(ecs::family_measure(EcsKind::qufit, MeasureKind::negativity, 0.5, 0.0) == 0.0);
    CHECK_THROWS_AS(ecs::family_measure(EcsKind::qubit, MeasureKind::negativity, 1.2, 0.5),
                    ecs::DomainError);
}

TEST_CASE("figure 3 spec: row count, header, determinism across workers") {
    SweepSpec spec;
    spec.figure = 3;
    spec.p_list = {0.3, 0.5, 0.8};
    spec.eta_step = 0.05;
    const ecs::FigureTable t1 = ecs::compute_figure(spec);
    CHECK(t1.columns == std::vector<std::string>{"p", "eta", "measure"});
    CHECK(t1.rows.size() == 3 * 20);

    spec.workers = 4;
    const ecs::FigureTable t4 = ecs::compute_figure(spec);
    CHECK(ecs::to_csv(t1) == ecs::to_csv(t4));
    CHECK(ecs::to_json(t1) == ecs::to_json(t4));
}

TEST_CASE("figure 2 emits both the pipeline curves and the reference curve") {
    SweepSpec spec;
    spec.figure = 2;
    spec.alpha_max = 2.0;
    spec.step = 0.25;
    const ecs::FigureTable t = ecs::compute_figure(spec);
    CHECK(t.columns == std::vector<std::string>{"alpha", "C3", "C4", "C3_ref"});
    CHECK(t.rows.size() == 8);
    // concurrences climb toward the orthogonal-limit plateaus with alpha
    CHECK(t.rows.back()[1] > 1.0);
    CHECK(t.rows.back()[2] > 1.1);
}

TEST_CASE("figure 7 skips singular eta and keeps tau nonnegative") {
    SweepSpec spec;
    spec.figure = 7;
    spec.step = 0.1;
    spec.eta_list = {0.0, 0.4, 1.0};
    std::ostringstream notes;
    const ecs::FigureTable t = ecs::compute_figure(spec, &notes);
    CHECK(t.rows.size() == 2 * 9);
    CHECK(notes.str().find("skipping") != std::string::npos);
    for (const auto& row : t.rows) CHECK(row[2] >= -1e-10);
}

TEST_CASE("empty grids are usage errors") {
    SweepSpec spec;
    spec.figure = 2;
    spec.alpha_max = 0.0;
    CHECK_THROWS_AS(ecs::compute_figure(spec), ecs::UsageError);

    SweepSpec s2;
    s2.figure = 3;
    s2.p_list = {};
    CHECK_THROWS_AS(ecs::compute_figure(s2), ecs::UsageError);

    SweepSpec s3;
    s3.figure = 3;
    s3.p_list = {1.5};
    CHECK_THROWS_AS(ecs::compute_figure(s3), ecs::DomainError);
}

TEST_CASE("csv formatting is stable and 12-significant-digit") {
    CHECK(ecs::format_value(0.1353352832366127) == "0.135335283237");
    CHECK(ecs::format_value(1.0) == "1");
    CHECK(ecs::format_value(0.05) == "0.05");
    ecs::FigureTable t;
    t.figure = 3;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.25}, {2.0, 0.5}};
    CHECK(ecs::to_csv(t) == "a,b\n1,0.25\n2,0.5\n");
}

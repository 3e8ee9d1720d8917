#include "ecs/figures.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace ecs {

namespace {

std::vector<Cx> family_weights(EcsKind kind) {
    switch (kind) {
        case EcsKind::qubit: return {{-1.0, 0.0}, {1.0, 0.0}};
        case EcsKind::qutrit: return {{1.0, 0.0}, {1.35, 0.0}, {1.0, 0.0}};
        default: return {{-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}};
    }
}

double alpha_for_overlap(double p) { return std::sqrt(-std::log(p)); }

}  // namespace

double family_measure(EcsKind kind, MeasureKind measure, double p, double eta) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("family_measure: p must lie in (0,1)");
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("family_measure: eta must lie in [0,1]");
    if (eta == 0.0) return 0.0;  // everything leaked to the environment

    const std::vector<Cx> w = family_weights(kind);
    Superposition state = make_ecs(kind, alpha_for_overlap(p), 0.0, w);
    const int both[] = {0, 1};
    state = lossy_channel(state, both, NoiseParam{eta});
    const DensityMatrix rho = trace_out(state, both);
    if (measure == MeasureKind::wootters) return wootters_concurrence(rho);
    const int second[] = {1};
    return negativity(rho, second);
}

namespace {

double pipeline_concurrence(EcsKind kind, double alpha) {
    return two_mode_concurrence(make_ecs(kind, alpha, 0.0, family_weights(kind)));
}

struct GridPoint {
    std::vector<double> args;
};

// An empty result row marks a skipped (singular) grid point; the notes for
// those are emitted in grid order after the workers join, so output and
// diagnostics are deterministic for any worker count.
FigureTable run_rows(const SweepSpec& spec, std::vector<std::string> columns,
                     const std::vector<GridPoint>& grid,
                     const std::function<std::vector<double>(const GridPoint&)>& fn,
                     std::ostream* notes) {
    FigureTable t;
    t.figure = spec.figure;
    t.columns = std::move(columns);
    std::vector<std::vector<double>> rows(grid.size());
    const int workers = std::max(1, spec.workers);
    if (workers == 1) {
        for (size_t i = 0; i < grid.size(); ++i) rows[i] = fn(grid[i]);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = static_cast<size_t>(w); i < grid.size(); i += workers)
                        rows[i] = fn(grid[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        if (rows[i].empty()) {
            if (notes) {
                *notes << "note: skipping singular grid point (";
                for (size_t a = 0; a < grid[i].args.size(); ++a)
                    *notes << (a ? ", " : "") << format_value(grid[i].args[a]);
                *notes << ")\n";
            }
            continue;
        }
        t.rows.push_back(std::move(rows[i]));
    }
    if (t.rows.empty()) throw UsageError("all grid points were singular");
    return t;
}

MeasureKind figure_measure(int figure) {
    return figure == 3 ? MeasureKind::wootters : MeasureKind::negativity;
}

EcsKind figure_family(int figure) {
    switch (figure) {
        case 3:
        case 4: return EcsKind::qubit;
        case 5: return EcsKind::qutrit;
        default: return EcsKind::qufit;
    }
}

}  // namespace

FigureTable compute_figure(const SweepSpec& spec, std::ostream* notes) {
    if (spec.figure < 2 || spec.figure > 7) throw UsageError("figure number must be 2..7");

    if (spec.figure == 2) {
        if (!(spec.step > 0.0)) throw UsageError("figure 2: step must be positive");
        std::vector<GridPoint> grid;
        for (double a = spec.step; a <= spec.alpha_max + 1e-12; a += spec.step)
            grid.push_back({{a}});
        if (grid.empty()) throw UsageError("figure 2: empty alpha grid");
        return run_rows(
            spec, {"alpha", "C3", "C4", "C3_ref"}, grid,
            [](const GridPoint& g) -> std::vector<double> {
                const double a = g.args[0];
                const double p = std::exp(-a * a);
                try {
                    return {a, pipeline_concurrence(EcsKind::qutrit, a),
                            pipeline_concurrence(EcsKind::qufit, a), c3_reference_curve(p)};
                } catch (const GramIllConditioned&) {
                    return {};  // alpha too small for the four-level ladder
                }
            },
            notes);
    }

    if (spec.figure <= 6) {
        if (!(spec.eta_step > 0.0 && spec.eta_step <= 1.0))
            throw UsageError("figures 3-6: eta step must lie in (0,1]");
        if (spec.p_list.empty()) throw UsageError("figures 3-6: empty p list");
        for (double p : spec.p_list)
            if (!(p > 0.0 && p < 1.0)) throw DomainError("figures 3-6: p values must lie in (0,1)");
        const int n_eta = static_cast<int>(std::floor(1.0 / spec.eta_step + 1e-9));
        std::vector<GridPoint> grid;
        for (double p : spec.p_list)
            for (int k = 1; k <= n_eta; ++k) grid.push_back({{p, k * spec.eta_step}});
        if (grid.empty()) throw UsageError("figures 3-6: empty grid");
        const EcsKind fam = figure_family(spec.figure);
        const MeasureKind m = figure_measure(spec.figure);
        return run_rows(
            spec, {"p", "eta", "measure"}, grid,
            [fam, m](const GridPoint& g) -> std::vector<double> {
                try {
                    return {g.args[0], g.args[1], family_measure(fam, m, g.args[0], g.args[1])};
                } catch (const GramIllConditioned&) {
                    return {};  // eta so small that the surviving labels coincide
                }
            },
            notes);
    }

    // Figure 7: tau over a p' grid for each eta.
    if (!(spec.step > 0.0 && spec.step < 1.0)) throw UsageError("figure 7: step must lie in (0,1)");
    if (spec.eta_list.empty()) throw UsageError("figure 7: empty eta list");
    std::vector<GridPoint> grid;
    for (double eta : spec.eta_list) {
        if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("figure 7: eta values must lie in [0,1]");
        if (eta == 0.0) {
            if (notes) *notes << "note: skipping eta = 0 (closed forms singular)\n";
            continue;
        }
        for (double pp = spec.step; pp < 1.0 - 1e-12; pp += spec.step)
            grid.push_back({{pp, eta}});
    }
    if (grid.empty()) throw UsageError("figure 7: empty grid");
    return run_rows(
        spec, {"pprime", "eta", "tau"}, grid,
        [](const GridPoint& g) -> std::vector<double> {
            try {
                return {g.args[0], g.args[1], monogamy_pipeline(g.args[0], g.args[1]).tau};
            } catch (const GramIllConditioned&) {
                return {};
            }
        },
        notes);
}

std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const FigureTable& table) {
    std::string out;
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_value(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const FigureTable& table) {
    nlohmann::json j;
    j["figure"] = table.figure;
    j["columns"] = table.columns;
    // Both emitters carry the same 12-significant-digit values.
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) r.push_back(std::strtod(format_value(v).c_str(), nullptr));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump() + "\n";
}

}  // namespace ecs

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ecs/entanglement.hpp"
#include "ecs/optics.hpp"

namespace ecs {

// Grid sweeps behind the `ecs figure` command. Everything here is
// deterministic: fixed grids, fixed float formatting, rows emitted in grid
// order regardless of how many workers computed them.

/// Bad sweep parameters (empty grid, nonpositive step); maps to a usage error.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class MeasureKind { wootters, negativity };

/// Entanglement measure of a decohered two-mode family at overlap p and
/// noise eta: builds the family state, passes both modes through the lossy
/// channel, traces out the environment. At eta = 0 the surviving state is an
/// exact product, so every measure is zero.
double family_measure(EcsKind kind, MeasureKind measure, double p, double eta);

struct SweepSpec {
    int figure = 2;  // 2..7
    double alpha_max = 3.0;
    double step = 0.01;                            // figure 2 alpha step, figure 7 p' step
    std::vector<double> p_list = {0.3, 0.5, 0.8};  // figures 3-6
    double eta_step = 0.01;                        // figures 3-6
    std::vector<double> eta_list = {0.1, 0.4, 1.0};  // figure 7
    int workers = 1;
};

struct FigureTable {
    int figure = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Evaluates the sweep. Skipped singular grid points are noted on `notes`
/// (when given). Throws UsageError for malformed grids and DomainError for
/// out-of-domain parameter values.
FigureTable compute_figure(const SweepSpec& spec, std::ostream* notes = nullptr);

/// 12-significant-digit float formatting shared by every emitter.
std::string format_value(double v);

std::string to_csv(const FigureTable& table);
std::string to_json(const FigureTable& table);

}  // namespace ecs

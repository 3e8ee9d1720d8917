#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ecs/coherent.hpp"

namespace ecs {

enum class AtomLevel { ground, excited };

struct AtomTerm {
    AtomLevel level;
    Cx coeff;
    CoherentLabel cavity;
};

/// Joint state of the two-level atom and the single cavity mode.
class AtomFieldState {
public:
    explicit AtomFieldState(std::vector<AtomTerm> terms);

    /// Atom in |g>, cavity in |start>.
    static AtomFieldState ground_start(CoherentLabel start);

    const std::vector<AtomTerm>& terms() const { return terms_; }
    double norm_squared() const;

private:
    std::vector<AtomTerm> terms_;
};

// Protocol primitives.
struct Pulse {
    Cx eps;
};
struct Dispersive {};
struct PhaseShift {
    double phi;
};
struct Displace {
    Cx beta;
    bool exact_phase = false;
};
struct MeasureGround {};

using RecipeStep = std::variant<Pulse, Dispersive, PhaseShift, Displace, MeasureGround>;

/// Ordered list of primitives: at most one atom measurement, which only
/// cavity operations (phase shift / displacement) may follow, and every
/// dispersive segment sits between two classical pulses.
struct Recipe {
    std::vector<RecipeStep> steps;
    void validate() const;
};

/// Classical pulse resonant with the atom:
///   |g> -> (|g> + eps|e>)/sqrt(1+|eps|^2),  |e> -> (-conj(eps)|g> + |e>)/sqrt(1+|eps|^2).
AtomFieldState apply_pulse(const AtomFieldState& s, Cx eps);

/// Dispersive atom-cavity segment at the quarter-period interaction time:
/// cavity label picks up +i on |g> branches and -i on |e> branches.
AtomFieldState apply_dispersive(const AtomFieldState& s);

/// Cavity phase shifter, label -> e^{i phi} label. Quarter-turn angles are
/// applied exactly so protocol labels stay bit-comparable.
Superposition apply_phase_shift(const Superposition& x, double phi);
AtomFieldState apply_phase_shift(const AtomFieldState& s, double phi);

/// Displacement, label -> label + beta. With exact_phase the term coefficient
/// additionally picks up e^{i Im(beta conj(label))}; the default drops that
/// phase (it cancels for the real-amplitude protocols).
Superposition apply_displacement(const Superposition& x, Cx beta, bool exact_phase = false);
AtomFieldState apply_displacement(const AtomFieldState& s, Cx beta, bool exact_phase = false);

struct MeasurementOutcome {
    Superposition state;         // normalized cavity superposition of the |g> branch
    double probability;          // squared norm of that branch
};

/// Projects onto the atomic ground state. Throws NeverGround when the ground
/// branch carries less than 1e-15 of the weight.
MeasurementOutcome measure_ground(const AtomFieldState& s);

/// Runs a validated recipe from |g>|start>, returning the final normalized
/// cavity superposition.
Superposition run_recipe(const Recipe& r, CoherentLabel start);

/// The generation sequence for rounds = 1, 2, 3 (superpositions of 2, 3, 4
/// coherent states). eps must hold rounds+1 pulse amplitudes. Rounds beyond
/// the first interleave a quarter-turn phase shift and a +/- alpha
/// displacement so the label ladder spreads to 2 alpha (then {3,1} alpha)
/// spacing before the final measurement and phase shift.
Recipe canonical_recipe(int rounds, std::span<const Cx> eps, Cx alpha,
                        double phase_sign = +1.0);

}  // namespace ecs

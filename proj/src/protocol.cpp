#include "ecs/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ecs {

namespace {

// e^{i phi}, exact at integer multiples of pi/2.
Cx phase_factor(double phi) {
    const double quarter = phi / (std::numbers::pi / 2.0);
    const long k = std::lround(quarter);
    if (std::abs(quarter - static_cast<double>(k)) < 1e-12) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, phi);
}

}  // namespace

AtomFieldState::AtomFieldState(std::vector<AtomTerm> terms) {
    for (AtomTerm& t : terms) {
        bool merged = false;
        for (AtomTerm& u : terms_) {
            if (u.level == t.level && same_label(u.cavity, t.cavity)) {
                u.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) terms_.push_back(t);
    }
    if (terms_.size() > 1) {
        auto it = std::remove_if(terms_.begin() + 1, terms_.end(),
                                 [](const AtomTerm& t) { return t.coeff == Cx{}; });
        terms_.erase(it, terms_.end());
        if (terms_.size() > 1 && terms_.front().coeff == Cx{}) terms_.erase(terms_.begin());
    }
    if (terms_.empty()) throw ZeroNorm("atom-field state needs at least one term");
}

AtomFieldState AtomFieldState::ground_start(CoherentLabel start) {
    return AtomFieldState({{AtomLevel::ground, Cx{1.0, 0.0}, start}});
}

double AtomFieldState::norm_squared() const {
    // Atom levels are orthogonal; cavity overlaps are exact.
    Cx s{};
    for (const AtomTerm& a : terms_)
        for (const AtomTerm& b : terms_)
            if (a.level == b.level) s += std::conj(a.coeff) * b.coeff * overlap(a.cavity, b.cavity);
    return s.real();
}

AtomFieldState apply_pulse(const AtomFieldState& s, Cx eps) {
    const double n = 1.0 / std::sqrt(1.0 + std::norm(eps));
    std::vector<AtomTerm> out;
    out.reserve(2 * s.terms().size());
    for (const AtomTerm& t : s.terms()) {
        if (t.level == AtomLevel::ground) {
            out.push_back({AtomLevel::ground, t.coeff * n, t.cavity});
            out.push_back({AtomLevel::excited, t.coeff * n * eps, t.cavity});
        } else {
            out.push_back({AtomLevel::ground, -t.coeff * n * std::conj(eps), t.cavity});
            out.push_back({AtomLevel::excited, t.coeff * n, t.cavity});
        }
    }
    return AtomFieldState(std::move(out));
}

AtomFieldState apply_dispersive(const AtomFieldState& s) {
    std::vector<AtomTerm> out;
    out.reserve(s.terms().size());
    for (const AtomTerm& t : s.terms()) {
        const Cx f = t.level == AtomLevel::ground ? Cx{0.0, 1.0} : Cx{0.0, -1.0};
        out.push_back({t.level, t.coeff, CoherentLabel{f * t.cavity.amp}});
    }
    return AtomFieldState(std::move(out));
}

Superposition apply_phase_shift(const Superposition& x, double phi) {
    const Cx f = phase_factor(phi);
    std::vector<Term> out = x.terms();
    for (Term& t : out)
        for (CoherentLabel& l : t.labels) l.amp *= f;
    return Superposition(x.n_modes(), std::move(out));
}

AtomFieldState apply_phase_shift(const AtomFieldState& s, double phi) {
    const Cx f = phase_factor(phi);
    std::vector<AtomTerm> out = s.terms();
    for (AtomTerm& t : out) t.cavity.amp *= f;
    return AtomFieldState(std::move(out));
}

namespace {

Cx displacement_phase(Cx beta, Cx label, bool exact_phase) {
    if (!exact_phase) return {1.0, 0.0};
    return std::polar(1.0, std::imag(beta * std::conj(label)));
}

}  // namespace

Superposition apply_displacement(const Superposition& x, Cx beta, bool exact_phase) {
    std::vector<Term> out = x.terms();
    for (Term& t : out)
        for (CoherentLabel& l : t.labels) {
            t.coeff *= displacement_phase(beta, l.amp, exact_phase);
            l.amp += beta;
        }
    return Superposition(x.n_modes(), std::move(out));
}

AtomFieldState apply_displacement(const AtomFieldState& s, Cx beta, bool exact_phase) {
    std::vector<AtomTerm> out = s.terms();
    for (AtomTerm& t : out) {
        t.coeff *= displacement_phase(beta, t.cavity.amp, exact_phase);
        t.cavity.amp += beta;
    }
    return AtomFieldState(std::move(out));
}

MeasurementOutcome measure_ground(const AtomFieldState& s) {
    std::vector<Term> cavity;
    for (const AtomTerm& t : s.terms())
        if (t.level == AtomLevel::ground) cavity.push_back({t.coeff, {t.cavity}});
    if (cavity.empty()) throw NeverGround("measure_ground: no ground-state component");
    Superposition branch(1, std::move(cavity));
    const double w = inner(branch, branch).real();
    const double total = s.norm_squared();
    if (w < 1e-15 || total <= 0.0)
        throw NeverGround("measure_ground: ground projection has zero weight");
    return {branch.scaled(1.0 / std::sqrt(w)), w / total};
}

void Recipe::validate() const {
    bool measured = false;
    int pulses_before = 0;
    for (size_t i = 0; i < steps.size(); ++i) {
        const RecipeStep& st = steps[i];
        if (std::holds_alternative<MeasureGround>(st)) {
            if (measured) throw DomainError("recipe: more than one measurement");
            measured = true;
            continue;
        }
        if (measured && !(std::holds_alternative<PhaseShift>(st) ||
                          std::holds_alternative<Displace>(st)))
            throw DomainError("recipe: only cavity operations may follow the measurement");
        if (std::holds_alternative<Pulse>(st)) ++pulses_before;
        if (std::holds_alternative<Dispersive>(st)) {
            bool pulse_after = false;
            for (size_t j = i + 1; j < steps.size(); ++j) {
                if (std::holds_alternative<Pulse>(steps[j])) { pulse_after = true; break; }
                if (std::holds_alternative<MeasureGround>(steps[j])) break;
            }
            if (pulses_before == 0 || !pulse_after)
                throw DomainError("recipe: dispersive segment must sit between two pulses");
        }
    }
    if (!measured) throw DomainError("recipe: generation recipe must measure the atom");
}

Superposition run_recipe(const Recipe& r, CoherentLabel start) {
    r.validate();
    AtomFieldState joint = AtomFieldState::ground_start(start);
    Superposition cavity = Superposition::product(std::vector<CoherentLabel>{start});
    bool measured = false;

    for (const RecipeStep& st : r.steps) {
        if (const auto* p = std::get_if<Pulse>(&st)) {
            joint = apply_pulse(joint, p->eps);
        } else if (std::holds_alternative<Dispersive>(st)) {
            joint = apply_dispersive(joint);
        } else if (const auto* ps = std::get_if<PhaseShift>(&st)) {
            if (measured)
                cavity = apply_phase_shift(cavity, ps->phi);
            else
                joint = apply_phase_shift(joint, ps->phi);
        } else if (const auto* d = std::get_if<Displace>(&st)) {
            if (measured)
                cavity = apply_displacement(cavity, d->beta, d->exact_phase);
            else
                joint = apply_displacement(joint, d->beta, d->exact_phase);
        } else {
            cavity = measure_ground(joint).state;
            measured = true;
        }
    }
    return normalize(cavity);
}

Recipe canonical_recipe(int rounds, std::span<const Cx> eps, Cx alpha, double phase_sign) {
    if (rounds < 1 || rounds > 3)
        throw DomainError("canonical_recipe: supported rounds are 1..3");
    if (static_cast<int>(eps.size()) != rounds + 1)
        throw DomainError("canonical_recipe: need rounds+1 pulse amplitudes");
    const double quarter = phase_sign * std::numbers::pi / 2.0;

    Recipe r;
    r.steps.push_back(Pulse{eps[0]});
    r.steps.push_back(Dispersive{});
    r.steps.push_back(Pulse{eps[1]});
    // Displacement signs alternate so the ladder of labels reaches
    // {2a, 0, -2a} after round two and {3a, a, -a, -3a} after round three.
    const Cx shifts[2] = {-phase_sign * alpha, phase_sign * alpha};
    for (int k = 2; k <= rounds; ++k) {
        r.steps.push_back(PhaseShift{quarter});
        r.steps.push_back(Displace{shifts[k - 2]});
        r.steps.push_back(Dispersive{});
        r.steps.push_back(Pulse{eps[k]});
    }
    r.steps.push_back(MeasureGround{});
    r.steps.push_back(PhaseShift{quarter});
    return r;
}

}  // namespace ecs

// ecs — command-line front end for the entangled-coherent-state toolkit.
//
// Subcommands:
//   ecs figure  --n <2..7> [grid flags] --out <path> [--format csv|json] [--workers N]
//   ecs compute <overlap|generate|concurrence|negativity|monogamy|violation> [flags]
//
// Exit codes: 0 success, 2 usage error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecs/entanglement.hpp"
#include "ecs/figures.hpp"
#include "ecs/fock.hpp"
#include "ecs/protocol.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

// Complex flags are written "re[,im]"; the imaginary part defaults to zero.
ecs::Cx parse_complex(const std::string& text) {
    try {
        double re = 0.0, im = 0.0;
        const auto comma = text.find(',');
        size_t used = 0;
        if (comma == std::string::npos) {
            re = std::stod(text, &used);
            if (used != text.size()) throw ecs::UsageError("bad complex literal: " + text);
        } else {
            re = std::stod(text.substr(0, comma), &used);
            if (used != comma) throw ecs::UsageError("bad complex literal: " + text);
            const std::string rest = text.substr(comma + 1);
            im = std::stod(rest, &used);
            if (used != rest.size()) throw ecs::UsageError("bad complex literal: " + text);
        }
        return {re, im};
    } catch (const std::logic_error&) {
        throw ecs::UsageError("bad complex literal: " + text);
    }
}

std::string fmt_fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

std::string fmt_complex(ecs::Cx v) {
    if (std::abs(v.imag()) < 1e-12) return fmt_fixed(v.real());
    return fmt_fixed(v.real()) + "," + fmt_fixed(v.imag());
}

struct FigureArgs {
    ecs::SweepSpec spec;
    std::string out;
    std::string format = "csv";
};

int run_figure(const FigureArgs& args) {
    ecs::FigureTable table = ecs::compute_figure(args.spec, &std::cerr);
    const std::string payload =
        args.format == "json" ? ecs::to_json(table) : ecs::to_csv(table);
    std::ofstream f(args.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << args.out << "\n";
        return kExitDomain;
    }
    f << payload;
    return 0;
}

struct ComputeArgs {
    std::string kind;
    std::string a = "0", b = "0", ratio = "1", alpha, beta = "0";
    std::vector<std::string> eps;
    std::vector<std::string> coeffs;
    double eta = 1.0, p = -1.0, pprime = 0.5;
    int cutoff = -1;
    std::string family = "qubit";
};

ecs::EcsKind parse_family(const std::string& name) {
    if (name == "qubit") return ecs::EcsKind::qubit;
    if (name == "qutrit") return ecs::EcsKind::qutrit;
    if (name == "qufit") return ecs::EcsKind::qufit;
    throw ecs::UsageError("unknown family kind: " + name);
}

double overlap_to_alpha(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ecs::DomainError("p must lie in (0,1)");
    return std::sqrt(-std::log(p));
}

std::vector<ecs::Cx> family_coeffs(const ComputeArgs& args, ecs::EcsKind kind) {
    if (!args.coeffs.empty()) {
        std::vector<ecs::Cx> out;
        for (const auto& c : args.coeffs) out.push_back(parse_complex(c));
        return out;
    }
    switch (kind) {
        case ecs::EcsKind::qubit:
            return {-parse_complex(args.ratio), {1.0, 0.0}};
        case ecs::EcsKind::qutrit:
            return {{1.0, 0.0}, {1.35, 0.0}, {1.0, 0.0}};
        default:
            return {{-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}};
    }
}

int run_compute(const ComputeArgs& args) {
    const std::string& kind = args.kind;
    if (kind == "overlap") {
        const ecs::CoherentLabel a{parse_complex(args.a)}, b{parse_complex(args.b)};
        ecs::Cx v;
        if (args.cutoff >= 0) {
            const ecs::Superposition sa = ecs::Superposition::product(std::vector{a});
            const ecs::Superposition sb = ecs::Superposition::product(std::vector{b});
            v = ecs::fock::oracle_inner(sa, sb, args.cutoff);
        } else {
            v = ecs::overlap(a, b);
        }
        std::cout << fmt_complex(v) << "\n";
        return 0;
    }
    if (kind == "generate") {
        if (args.eps.size() < 2 || args.eps.size() > 4)
            throw ecs::UsageError("generate: pass 2..4 pulse amplitudes via --eps");
        std::vector<ecs::Cx> eps;
        for (const auto& e : args.eps) eps.push_back(parse_complex(e));
        const ecs::Cx alpha = args.alpha.empty() ? ecs::Cx{1.0, 0.0} : parse_complex(args.alpha);
        const int rounds = static_cast<int>(eps.size()) - 1;
        const ecs::Superposition out =
            ecs::run_recipe(ecs::canonical_recipe(rounds, eps, alpha), ecs::CoherentLabel{alpha});
        // Report in the generation convention: labels descending, weights
        // rescaled so the conventional unit coefficient prints as 1.
        std::vector<ecs::Term> terms = out.terms();
        std::sort(terms.begin(), terms.end(), [](const ecs::Term& x, const ecs::Term& y) {
            if (x.labels[0].amp.real() != y.labels[0].amp.real())
                return x.labels[0].amp.real() > y.labels[0].amp.real();
            return x.labels[0].amp.imag() > y.labels[0].amp.imag();
        });
        const ecs::Cx divisor = rounds == 1 ? terms.back().coeff : terms.front().coeff;
        std::ostringstream line;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) line << ' ';
            line << fmt_complex(terms[i].coeff / divisor);
        }
        std::cout << line.str() << "\n";
        return 0;
    }
    if (kind == "concurrence") {
        const ecs::EcsKind fam = parse_family(args.family);
        const ecs::Cx alpha = args.alpha.empty()
                                  ? ecs::Cx{overlap_to_alpha(args.p < 0 ? 0.5 : args.p), 0.0}
                                  : parse_complex(args.alpha);
        const ecs::Superposition state =
            ecs::make_ecs(fam, alpha, parse_complex(args.beta), family_coeffs(args, fam));
        std::cout << fmt_fixed(ecs::two_mode_concurrence(state)) << "\n";
        return 0;
    }
    if (kind == "negativity") {
        const ecs::EcsKind fam = parse_family(args.family);
        const double p = args.p < 0 ? 0.5 : args.p;
        double v;
        if (args.cutoff >= 0) {
            ecs::Superposition state = ecs::make_ecs(fam, overlap_to_alpha(p), 0.0,
                                                     family_coeffs(args, fam));
            const int both[] = {0, 1};
            state = ecs::lossy_channel(state, both, ecs::NoiseParam{args.eta});
            const int split[] = {1};
            v = ecs::fock::oracle_negativity(state, both, split, args.cutoff);
        } else {
            v = ecs::family_measure(fam, ecs::MeasureKind::negativity, p, args.eta);
        }
        std::cout << fmt_fixed(v) << "\n";
        return 0;
    }
    if (kind == "monogamy") {
        const ecs::MonogamyReport r = ecs::monogamy_pipeline(args.pprime, args.eta);
        std::cout << fmt_fixed(r.c_ab) << " " << fmt_fixed(r.c_ad) << " "
                  << fmt_fixed(r.c_abd) << " " << fmt_fixed(r.tau) << "\n";
        return 0;
    }
    if (kind == "violation") {
        const ecs::ViolationPair v = ecs::qutrit_violation_example();
        std::cout << fmt_fixed(v.lhs) << " " << fmt_fixed(v.rhs) << "\n";
        return 0;
    }
    throw ecs::UsageError("unknown compute kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled coherent state toolkit"};
    app.require_subcommand(1);

    FigureArgs fig;
    CLI::App* figure = app.add_subcommand("figure", "write a parameter sweep to CSV/JSON");
    figure->add_option("--n", fig.spec.figure, "figure number (2..7)")->required();
    figure->add_option("--alpha-max", fig.spec.alpha_max, "figure 2: largest alpha");
    figure->add_option("--step", fig.spec.step, "alpha / p' grid step");
    figure->add_option("--p", fig.spec.p_list, "figures 3-6: overlap values")->delimiter(',');
    figure->add_option("--eta-step", fig.spec.eta_step, "figures 3-6: eta grid step");
    figure->add_option("--eta", fig.spec.eta_list, "figure 7: eta values")->delimiter(',');
    figure->add_option("--workers", fig.spec.workers, "worker threads for row evaluation");
    figure->add_option("--out", fig.out, "output path")->required();
    figure->add_option("--format", fig.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    ComputeArgs comp;
    CLI::App* compute = app.add_subcommand("compute", "print a single quantity");
    compute->add_option("quantity", comp.kind,
                        "overlap|generate|concurrence|negativity|monogamy|violation")
        ->required();
    compute->add_option("--a", comp.a, "first coherent label re[,im]");
    compute->add_option("--b", comp.b, "second coherent label re[,im]");
    compute->add_option("--alpha", comp.alpha, "field amplitude re[,im]");
    compute->add_option("--beta", comp.beta, "displacement re[,im]");
    compute->add_option("--eps", comp.eps, "pulse amplitudes re[,im] ...");
    compute->add_option("--coeffs", comp.coeffs, "family weights re[,im] ...");
    compute->add_option("--ratio", comp.ratio, "eps0*conj(eps1) for the qubit family");
    compute->add_option("--kind", comp.family, "family: qubit|qutrit|qufit");
    compute->add_option("--p", comp.p, "coherent overlap p in (0,1)");
    compute->add_option("--pprime", comp.pprime, "three-mode overlap p' in (0,1)");
    compute->add_option("--eta", comp.eta, "noise parameter in [0,1]");
    compute->add_option("--cutoff", comp.cutoff, "Fock cutoff: use the oracle path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (figure->parsed()) return run_figure(fig);
        return run_compute(comp);
    } catch (const ecs::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ecs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// Command-line front end: generate families, classify them, build and
// certify multipliers, run perturbation and continuity experiments.
// Exit codes: 0 all certificates hold, 1 a certificate failed, 2
// input/validation error. Reports are JSON; text output is a rendering
// of the same report.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "framemul/generators.hpp"
#include "framemul/io.hpp"
#include "framemul/multiplier.hpp"
#include "framemul/perturbation.hpp"
#include "framemul/sequences.hpp"

namespace fm = framemul;
using fm::json;

namespace {

struct OutputOptions {
    std::string out;
    std::string format = "json";
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out, "Write the JSON report to this path (atomic)");
    cmd->add_option("--format", opts.format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"json", "text"}));
}

double certificate_slack_rel() {
    if (const char* env = std::getenv("FRAMEMUL_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw fm::ValidationError("FRAMEMUL_TOL is not a number");
        }
    }
    return fm::tol::kCertSlackRel;
}

// Re-evaluate holds under the environment-provided slack, if any.
void apply_tolerance_override(json& report) {
    if (std::getenv("FRAMEMUL_TOL") == nullptr) return;
    const double slack = certificate_slack_rel();
    if (!report.contains("certificates")) return;
    for (json& c : report["certificates"]) {
        const double claimed = c["claimed"].get<double>();
        const double measured = c["measured"].get<double>();
        c["holds"] = measured <= claimed + slack * std::abs(claimed) + fm::tol::kAbs;
    }
}

int emit(json report, const OutputOptions& opts) {
    apply_tolerance_override(report);
    if (!opts.out.empty()) {
        fm::save_json_atomic(opts.out, report);
        std::cout << fm::render_text(report);
    } else if (opts.format == "text") {
        std::cout << fm::render_text(report);
    } else {
        std::cout << report.dump(2) << "\n";
    }

    int rc = 0;
    if (report.contains("certificates")) {
        for (const json& c : report["certificates"]) {
            if (!c["holds"].get<bool>()) {
                std::cerr << "certificate failed: " << c["name"].get<std::string>()
                          << " (margin " << c["margin"].get<double>() << ")\n";
                rc = 1;
            }
        }
    }
    if (report.contains("tables")) {
        for (const json& t : report["tables"]) {
            for (const json& r : t["rows"]) {
                const double bound = r["bound"].get<double>();
                const double measured = r["measured"].get<double>();
                if (measured > bound + certificate_slack_rel() * std::abs(bound) + fm::tol::kAbs) {
                    std::cerr << "table row failed: " << t["name"].get<std::string>() << " l="
                              << r["l"].get<std::size_t>() << " (margin "
                              << r["margin"].get<double>() << ")\n";
                    rc = 1;
                }
            }
        }
    }
    return rc;
}

json frame_summary(const fm::FrameReport& r) {
    json j{{"bessel_bound_opt", r.bessel_bound_opt}, {"is_frame", r.is_frame}};
    if (r.lower_bound_opt) j["lower_bound_opt"] = *r.lower_bound_opt;
    j["is_riesz_basis"] = r.is_riesz_basis;
    j["is_riesz_sequence"] = r.is_riesz_sequence;
    return j;
}

json certificates_json(const std::vector<fm::BoundCertificate>& certs) {
    json arr = json::array();
    for (const fm::BoundCertificate& c : certs) arr.push_back(fm::to_json(c));
    return arr;
}

struct SpecPaths {
    std::string symbol;
    std::string analysis;
    std::string synthesis;
};

void add_spec_options(CLI::App* cmd, SpecPaths& paths, const std::string& suffix = "") {
    cmd->add_option("--symbol" + suffix, paths.symbol, "Symbol JSON file")->required();
    cmd->add_option("--analysis" + suffix, paths.analysis, "Analysis family JSON file")->required();
    cmd->add_option("--synthesis" + suffix, paths.synthesis, "Synthesis family JSON file")->required();
}

fm::MultiplierSpec load_spec(const SpecPaths& paths) {
    return fm::MultiplierSpec(fm::load_symbol(paths.symbol), fm::load_family(paths.analysis),
                              fm::load_family(paths.synthesis));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"framemul: finite-dimensional frame and Bessel multiplier toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // gen ----------------------------------------------------------------
    struct {
        std::string kind;
        std::size_t dim = 4;
        std::size_t count = 0;
        std::uint64_t seed = 0;
        std::size_t lattice_a = 1, lattice_b = 1;
        std::size_t pmax = 2;
        double condition = 1.0;
        OutputOptions out;
        std::string family_out;
    } gen;
    {
        auto* cmd = app.add_subcommand("gen", "Generate a vector family");
        cmd->add_option("--kind", gen.kind,
                        "onb | random_bessel | random_frame | riesz_from_matrix | gabor_regular "
                        "| gabor_irregular | harmonic_counterexample")
            ->required();
        cmd->add_option("--dim", gen.dim, "Ambient dimension n")->required();
        cmd->add_option("--count", gen.count, "Family size K (0 = kind default)");
        cmd->add_option("--seed", gen.seed, "RNG seed");
        cmd->add_option("--lattice-a", gen.lattice_a, "Gabor time step");
        cmd->add_option("--lattice-b", gen.lattice_b, "Gabor frequency step");
        cmd->add_option("--pmax", gen.pmax, "Harmonic shell count P");
        cmd->add_option("--condition", gen.condition, "Condition target for riesz_from_matrix");
        cmd->add_option("--family-out", gen.family_out, "Path for the generated family JSON")
            ->required();
        add_output_options(cmd, gen.out);
        cmd->callback([&] {
            fm::GenSpec g;
            g.kind = fm::family_kind_from_string(gen.kind);
            g.dim = gen.dim;
            g.count = gen.count;
            g.seed = gen.seed;
            g.lattice_a = gen.lattice_a;
            g.lattice_b = gen.lattice_b;
            g.harmonic_p = gen.pmax;
            g.condition = gen.condition;
            const fm::VectorFamily family = fm::generate(g);
            fm::save_json_atomic(gen.family_out, fm::to_json(family));
            json report{{"command", "gen"},
                        {"kind", gen.kind},
                        {"dim", family.dim()},
                        {"count", family.size()},
                        {"seed", gen.seed},
                        {"path", gen.family_out}};
            exit_code = emit(report, gen.out);
        });
    }

    // analyze --------------------------------------------------------------
    struct {
        std::string family;
        OutputOptions out;
    } analyze;
    {
        auto* cmd = app.add_subcommand("analyze", "Classify a family (bounds, frame/Riesz flags)");
        cmd->add_option("family", analyze.family, "Family JSON file")->required();
        add_output_options(cmd, analyze.out);
        cmd->callback([&] {
            const fm::VectorFamily family = fm::load_family(analyze.family);
            const fm::FrameReport report = fm::classify(family);
            json j{{"command", "analyze"},
                   {"input", analyze.family},
                   {"dim", family.dim()},
                   {"count", family.size()},
                   {"frame_report", fm::to_json(report)}};
            exit_code = emit(j, analyze.out);
        });
    }

    // dual -----------------------------------------------------------------
    struct {
        std::string family;
        std::string dual_out;
        OutputOptions out;
    } dual;
    {
        auto* cmd = app.add_subcommand("dual", "Write the canonical dual family");
        cmd->add_option("family", dual.family, "Family JSON file")->required();
        cmd->add_option("--family-out", dual.dual_out, "Path for the dual family JSON")->required();
        add_output_options(cmd, dual.out);
        cmd->callback([&] {
            const fm::VectorFamily family = fm::load_family(dual.family);
            const fm::FrameReport report = fm::classify(family);
            if (!report.is_frame)
                throw fm::ValidationError(dual.family + ": not a frame, no canonical dual");
            fm::save_json_atomic(dual.dual_out, fm::to_json(*report.dual));
            json j{{"command", "dual"},
                   {"input", dual.family},
                   {"path", dual.dual_out},
                   {"dual_lower_bound", 1.0 / report.bessel_bound_opt},
                   {"dual_upper_bound", 1.0 / *report.lower_bound_opt}};
            exit_code = emit(j, dual.out);
        });
    }

    // mult-build -------------------------------------------------------------
    struct {
        SpecPaths spec;
        std::string operator_out;
        OutputOptions out;
    } mbuild;
    {
        auto* cmd = app.add_subcommand("mult-build", "Build the multiplier matrix");
        add_spec_options(cmd, mbuild.spec);
        cmd->add_option("--operator-out", mbuild.operator_out, "Path for the operator JSON")
            ->required();
        add_output_options(cmd, mbuild.out);
        cmd->callback([&] {
            const fm::MultiplierSpec spec = load_spec(mbuild.spec);
            const fm::LinOperator m = fm::build(spec);
            fm::save_json_atomic(mbuild.operator_out, fm::to_json(m));
            const fm::OperatorNorms n = fm::norms(m);
            json j{{"command", "mult-build"},
                   {"rows", m.rows()},
                   {"cols", m.cols()},
                   {"path", mbuild.operator_out},
                   {"norms", json{{"op", n.op}, {"hs", n.hs}, {"trace", n.trace}}}};
            exit_code = emit(j, mbuild.out);
        });
    }

    // mult-certify -------------------------------------------------------------
    struct {
        SpecPaths spec;
        OutputOptions out;
    } mcert;
    {
        auto* cmd = app.add_subcommand("mult-certify", "Certify the three multiplier norm bounds");
        add_spec_options(cmd, mcert.spec);
        add_output_options(cmd, mcert.out);
        cmd->callback([&] {
            const fm::MultiplierSpec spec = load_spec(mcert.spec);
            json j{{"command", "mult-certify"},
                   {"certificates", certificates_json(fm::certify_bounds(spec))}};
            exit_code = emit(j, mcert.out);
        });
    }

    // mult-trace -------------------------------------------------------------
    struct {
        SpecPaths spec;
        OutputOptions out;
    } mtrace;
    {
        auto* cmd = app.add_subcommand("mult-trace", "Trace identity: tr(M) vs sum m_k <phi_k, psi_k>");
        add_spec_options(cmd, mtrace.spec);
        add_output_options(cmd, mtrace.out);
        cmd->callback([&] {
            const fm::MultiplierSpec spec = load_spec(mtrace.spec);
            const fm::TracePair t = fm::trace_formula(spec);
            const double deviation = std::abs(t.lhs - t.rhs);
            const double allowed = 1e-10 * (1.0 + std::abs(t.lhs));
            json j{{"command", "mult-trace"},
                   {"lhs", fm::to_json(t.lhs)},
                   {"rhs", fm::to_json(t.rhs)},
                   {"certificates",
                    certificates_json({fm::make_certificate("trace-formula", allowed, deviation,
                                                            0.0, 0.0)})}};
            exit_code = emit(j, mtrace.out);
        });
    }

    // mult-compose -------------------------------------------------------------
    struct {
        SpecPaths a, b;
        std::string operator_out;
        OutputOptions out;
    } mcompose;
    {
        auto* cmd = app.add_subcommand(
            "mult-compose", "Compose two multipliers via the five-factor Gram product");
        add_spec_options(cmd, mcompose.a, "-a");
        add_spec_options(cmd, mcompose.b, "-b");
        cmd->add_option("--operator-out", mcompose.operator_out, "Path for the operator JSON")
            ->required();
        add_output_options(cmd, mcompose.out);
        cmd->callback([&] {
            const fm::MultiplierSpec a = load_spec(mcompose.a);
            const fm::MultiplierSpec b = load_spec(mcompose.b);
            const fm::LinOperator five = fm::compose(a, b);
            const fm::LinOperator direct = fm::build(a) * fm::build(b);
            fm::save_json_atomic(mcompose.operator_out, fm::to_json(five));
            const double scale = std::max({fm::max_abs(five), fm::max_abs(direct), 1.0});
            const double deviation = fm::max_abs(five - direct) / scale;
            json j{{"command", "mult-compose"},
                   {"rows", five.rows()},
                   {"cols", five.cols()},
                   {"path", mcompose.operator_out},
                   {"certificates",
                    certificates_json({fm::make_certificate("compose-cross-check",
                                                            fm::tol::kCrossCheck, deviation,
                                                            0.0, 0.0)})}};
            exit_code = emit(j, mcompose.out);
        });
    }

    // mult-invert -------------------------------------------------------------
    struct {
        SpecPaths spec;
        std::string symbol_out, analysis_out, synthesis_out;
        OutputOptions out;
    } minvert;
    {
        auto* cmd = app.add_subcommand("mult-invert", "Invert a Riesz multiplier");
        add_spec_options(cmd, minvert.spec);
        cmd->add_option("--symbol-out", minvert.symbol_out, "Path for the inverse symbol")
            ->required();
        cmd->add_option("--analysis-out", minvert.analysis_out, "Path for the inverse analysis family")
            ->required();
        cmd->add_option("--synthesis-out", minvert.synthesis_out,
                        "Path for the inverse synthesis family")
            ->required();
        add_output_options(cmd, minvert.out);
        cmd->callback([&] {
            const fm::MultiplierSpec spec = load_spec(minvert.spec);
            const fm::MultiplierSpec inv = fm::invert_riesz(spec);
            fm::save_json_atomic(minvert.symbol_out, fm::to_json(inv.symbol));
            fm::save_json_atomic(minvert.analysis_out, fm::to_json(inv.analysis));
            fm::save_json_atomic(minvert.synthesis_out, fm::to_json(inv.synthesis));
            const fm::LinOperator m = fm::build(spec);
            const fm::LinOperator mi = fm::build(inv);
            const double left = fm::operator_norm(
                mi * m - fm::LinOperator::identity(spec.analysis.dim()));
            const double right = fm::operator_norm(
                m * mi - fm::LinOperator::identity(spec.synthesis.dim()));
            json j{{"command", "mult-invert"},
                   {"symbol_path", minvert.symbol_out},
                   {"analysis_path", minvert.analysis_out},
                   {"synthesis_path", minvert.synthesis_out},
                   {"certificates",
                    certificates_json(
                        {fm::make_certificate("inverse-left-identity", fm::tol::kInversion, left,
                                              0.0, 0.0),
                         fm::make_certificate("inverse-right-identity", fm::tol::kInversion, right,
                                              0.0, 0.0)})}};
            exit_code = emit(j, minvert.out);
        });
    }

    // mult-recover -------------------------------------------------------------
    struct {
        std::string operator_path, analysis, synthesis, symbol_out;
        OutputOptions out;
    } mrecover;
    {
        auto* cmd = app.add_subcommand("mult-recover",
                                       "Recover the symbol of a multiplier over Riesz bases");
        cmd->add_option("--operator", mrecover.operator_path, "Operator JSON file")->required();
        cmd->add_option("--analysis", mrecover.analysis, "Analysis family JSON file")->required();
        cmd->add_option("--synthesis", mrecover.synthesis, "Synthesis family JSON file")->required();
        cmd->add_option("--symbol-out", mrecover.symbol_out, "Path for the recovered symbol")
            ->required();
        add_output_options(cmd, mrecover.out);
        cmd->callback([&] {
            const fm::Symbol sym =
                fm::recover_symbol(fm::load_operator(mrecover.operator_path),
                                   fm::load_family(mrecover.analysis),
                                   fm::load_family(mrecover.synthesis));
            fm::save_json_atomic(mrecover.symbol_out, fm::to_json(sym));
            json j{{"command", "mult-recover"},
                   {"path", mrecover.symbol_out},
                   {"count", sym.size()},
                   {"norm_inf", sym.norm_inf()},
                   {"semi_normalized", sym.semi_normalized()}};
            exit_code = emit(j, mrecover.out);
        });
    }

    // perturb-predict ------------------------------------------------------------
    struct {
        std::string base, perturbed;
        OutputOptions out;
    } ppredict;
    {
        auto* cmd = app.add_subcommand("perturb-predict",
                                       "Frame-bound envelope and operator drifts for a perturbed family");
        cmd->add_option("base", ppredict.base, "Base family JSON file")->required();
        cmd->add_option("perturbed", ppredict.perturbed, "Perturbed family JSON file")->required();
        add_output_options(cmd, ppredict.out);
        cmd->callback([&] {
            const fm::VectorFamily f = fm::load_family(ppredict.base);
            const fm::VectorFamily g = fm::load_family(ppredict.perturbed);
            const fm::PredictBoundsResult res = fm::predict_bounds(f, g);
            const fm::OperatorDrift drift = fm::operator_drift(f, g);
            std::vector<fm::BoundCertificate> certs = res.certificates;
            certs.insert(certs.end(), drift.certificates.begin(), drift.certificates.end());
            json j{{"command", "perturb-predict"},
                   {"similarity", fm::to_json(fm::similarity(f, g))},
                   {"prediction",
                    json{{"mu", res.prediction.mu},
                         {"applicable", res.prediction.applicable},
                         {"predicted_lower", res.prediction.predicted_lower},
                         {"predicted_upper", res.prediction.predicted_upper}}},
                   {"perturbed", frame_summary(res.perturbed)},
                   {"drift",
                    json{{"epsilon", drift.epsilon},
                         {"dC", drift.dC},
                         {"dD", drift.dD},
                         {"dS", drift.dS},
                         {"dS_bound", drift.dS_bound},
                         {"bounds_claimed", drift.bounds_claimed}}},
                   {"certificates", certificates_json(certs)}};
            if (res.riesz_inherited) j["riesz_inherited"] = *res.riesz_inherited;
            exit_code = emit(j, ppredict.out);
        });
    }

    // perturb-converge ------------------------------------------------------------
    struct {
        SpecPaths spec;
        std::string mode;
        int steps = 8;
        double eps0 = 0.5;
        std::uint64_t seed = 0;
        OutputOptions out;
    } pconverge;
    {
        auto* cmd = app.add_subcommand("perturb-converge",
                                       "Halving-distance continuity experiment for a multiplier");
        add_spec_options(cmd, pconverge.spec);
        cmd->add_option("--mode", pconverge.mode,
                        "symbol_inf | symbol_l2 | symbol_l1 | family_uniform | family_l2 | "
                        "family_l1 | joint")
            ->required();
        cmd->add_option("--steps", pconverge.steps, "Number of halving steps");
        cmd->add_option("--eps0", pconverge.eps0, "Initial distance");
        cmd->add_option("--seed", pconverge.seed, "RNG seed for the perturbation directions");
        add_output_options(cmd, pconverge.out);
        cmd->callback([&] {
            const fm::MultiplierSpec spec = load_spec(pconverge.spec);
            fm::ContinuityOptions opts;
            opts.steps = pconverge.steps;
            opts.eps0 = pconverge.eps0;
            opts.seed = pconverge.seed;
            const fm::ContinuityResult res =
                fm::continuity_experiment(spec, fm::continuity_mode_from_string(pconverge.mode), opts);
            json j{{"command", "perturb-converge"},
                   {"mode", pconverge.mode},
                   {"seed", pconverge.seed},
                   {"eps0", pconverge.eps0},
                   {"steps", pconverge.steps},
                   {"base_upper_bound", res.base_upper_bound},
                   {"tables", json::array({fm::to_json(res.table)})}};
            if (!res.perturbed_upper_bounds.empty())
                j["perturbed_upper_bounds"] = res.perturbed_upper_bounds;
            exit_code = emit(j, pconverge.out);
        });
    }

    // hs-bessel ------------------------------------------------------------
    struct {
        std::string first, second;
        int trials = 100;
        std::uint64_t seed = 0;
        OutputOptions out;
    } hsb;
    {
        auto* cmd = app.add_subcommand("hs-bessel",
                                       "Tensor-coefficient energy bound in the Hilbert-Schmidt space");
        cmd->add_option("first", hsb.first, "First family JSON file")->required();
        cmd->add_option("second", hsb.second, "Second family JSON file")->required();
        cmd->add_option("--trials", hsb.trials, "Number of random operators");
        cmd->add_option("--seed", hsb.seed, "RNG seed");
        add_output_options(cmd, hsb.out);
        cmd->callback([&] {
            const fm::VectorFamily f = fm::load_family(hsb.first);
            const fm::VectorFamily g = fm::load_family(hsb.second);
            const fm::BoundCertificate cert =
                fm::hs_bessel_certificate(f, g, hsb.trials, hsb.seed);
            json j{{"command", "hs-bessel"},
                   {"trials", hsb.trials},
                   {"seed", hsb.seed},
                   {"certificates", certificates_json({cert})}};
            exit_code = emit(j, hsb.out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const fm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

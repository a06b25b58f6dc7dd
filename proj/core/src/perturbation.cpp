#include "framemul/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framemul/rng.hpp"

namespace framemul {

namespace {

std::vector<double> member_distances(const VectorFamily& f, const VectorFamily& g) {
    std::vector<double> d(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) d[k] = (f[k] - g[k]).norm();
    return d;
}

double family_metric(const std::vector<double>& member_norms, ContinuityMode mode) {
    switch (mode) {
        case ContinuityMode::family_uniform:
            return *std::max_element(member_norms.begin(), member_norms.end());
        case ContinuityMode::family_l1:
            return pairwise_sum(std::span<const double>(member_norms));
        default: {  // l2 metric, also used by joint
            std::vector<double> sq(member_norms.size());
            for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = member_norms[k] * member_norms[k];
            return std::sqrt(pairwise_sum(std::span<const double>(sq)));
        }
    }
}

double symbol_metric(const Symbol& m, ContinuityMode mode) {
    switch (mode) {
        case ContinuityMode::symbol_inf:
            return m.norm_inf();
        case ContinuityMode::symbol_l1:
            return m.norm_1();
        default:  // l2 metric, also used by joint
            return m.norm_2();
    }
}

VectorFamily shifted(const VectorFamily& base, const VectorFamily& direction, double factor) {
    std::vector<CVector> members;
    members.reserve(base.size());
    for (std::size_t k = 0; k < base.size(); ++k)
        members.push_back(base[k] + cx{factor, 0.0} * direction[k]);
    return VectorFamily(base.dim(), std::move(members), base.labels());
}

Symbol shifted(const Symbol& base, const Symbol& direction, double factor) {
    std::vector<cx> entries(base.size());
    for (std::size_t k = 0; k < base.size(); ++k)
        entries[k] = base[k] + cx{factor, 0.0} * direction[k];
    return Symbol(std::move(entries));
}

double paired_norm(const OperatorNorms& n, const std::string& which) {
    if (which == "op") return n.op;
    if (which == "hs") return n.hs;
    return n.trace;
}

VectorFamily draw_direction_family(GaussianRng& rng, std::size_t dim, std::size_t count) {
    std::vector<CVector> members;
    members.reserve(count);
    for (std::size_t k = 0; k < count; ++k) members.push_back(rng.vector(dim));
    return VectorFamily(dim, std::move(members));
}

} // namespace

SimilarityReport similarity(const VectorFamily& f, const VectorFamily& g) {
    if (f.size() != g.size() || f.dim() != g.dim()) {
        std::ostringstream os;
        os << "similarity: family shape mismatch (K=" << f.size() << ", dim=" << f.dim()
           << ") vs (K=" << g.size() << ", dim=" << g.dim() << ")";
        throw DimensionError(os.str());
    }
    const std::vector<double> d = member_distances(f, g);
    SimilarityReport r;
    r.d_sup = *std::max_element(d.begin(), d.end());
    std::vector<double> sq(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) sq[k] = d[k] * d[k];
    r.d_l2 = std::sqrt(pairwise_sum(std::span<const double>(sq)));
    r.d_l1 = pairwise_sum(std::span<const double>(d));
    r.d_bessel = operator_norm(synthesis_matrix(f) - synthesis_matrix(g));
    return r;
}

PredictBoundsResult predict_bounds(const VectorFamily& f, const VectorFamily& g) {
    FrameReport base = classify(f);
    if (!base.is_frame) throw ValidationError("predict_bounds: base family is not a frame");

    const double a = *base.lower_bound_opt;
    const double b = base.bessel_bound_opt;

    PredictBoundsResult result;
    result.prediction.mu = similarity(f, g).d_bessel;
    result.prediction.applicable = result.prediction.mu < std::sqrt(a);
    result.perturbed = classify(g);

    if (result.prediction.applicable) {
        const double mu = result.prediction.mu;
        result.prediction.predicted_lower = a * std::pow(1.0 - mu / std::sqrt(a), 2);
        result.prediction.predicted_upper = b * std::pow(1.0 + mu / std::sqrt(b), 2);

        const double perturbed_lower =
            result.perturbed.lower_bound_opt ? *result.perturbed.lower_bound_opt : 0.0;
        result.certificates.push_back(make_certificate(
            "lower-envelope", perturbed_lower, result.prediction.predicted_lower, tol::kRel));
        result.certificates.push_back(make_certificate(
            "upper-envelope", result.prediction.predicted_upper,
            result.perturbed.bessel_bound_opt, tol::kRel));
    }
    if (base.is_riesz_basis && result.prediction.applicable)
        result.riesz_inherited = result.perturbed.is_riesz_basis;
    return result;
}

OperatorDrift operator_drift(const VectorFamily& f, const VectorFamily& g) {
    FrameReport base = classify(f);
    if (!base.is_frame) throw ValidationError("operator_drift: base family is not a frame");

    OperatorDrift drift;
    drift.epsilon = similarity(f, g).d_l2;
    drift.dC = operator_norm(analysis_matrix(g) - analysis_matrix(f));
    drift.dD = operator_norm(synthesis_matrix(g) - synthesis_matrix(f));
    drift.dS = operator_norm(frame_operator(g) - frame_operator(f));
    const double b = base.bessel_bound_opt;
    drift.dS_bound = drift.epsilon * (std::sqrt(b + 1.0) + std::sqrt(b));
    drift.bounds_claimed = drift.epsilon <= 1.0;
    if (drift.bounds_claimed) {
        drift.certificates = {
            make_certificate("drift-analysis", drift.epsilon, drift.dC, tol::kRel),
            make_certificate("drift-synthesis", drift.epsilon, drift.dD, tol::kRel),
            make_certificate("drift-frame-operator", drift.dS_bound, drift.dS, tol::kRel),
        };
    }
    return drift;
}

const char* to_string(ContinuityMode mode) {
    switch (mode) {
        case ContinuityMode::symbol_inf: return "symbol_inf";
        case ContinuityMode::symbol_l2: return "symbol_l2";
        case ContinuityMode::symbol_l1: return "symbol_l1";
        case ContinuityMode::family_uniform: return "family_uniform";
        case ContinuityMode::family_l2: return "family_l2";
        case ContinuityMode::family_l1: return "family_l1";
        case ContinuityMode::joint: return "joint";
    }
    return "unknown";
}

ContinuityMode continuity_mode_from_string(const std::string& name) {
    for (ContinuityMode mode :
         {ContinuityMode::symbol_inf, ContinuityMode::symbol_l2, ContinuityMode::symbol_l1,
          ContinuityMode::family_uniform, ContinuityMode::family_l2, ContinuityMode::family_l1,
          ContinuityMode::joint}) {
        if (name == to_string(mode)) return mode;
    }
    throw ValidationError("unknown continuity mode: " + name);
}

ContinuityResult continuity_experiment(const MultiplierSpec& spec, ContinuityMode mode,
                                       const ContinuityOptions& opts) {
    if (opts.steps <= 0) throw ValidationError("continuity_experiment: steps must be positive");
    if (opts.eps0 < 0.0) throw ValidationError("continuity_experiment: eps0 must be nonnegative");

    const std::size_t count = spec.symbol.size();
    GaussianRng rng(opts.seed);

    const bool symbol_mode = mode == ContinuityMode::symbol_inf ||
                             mode == ContinuityMode::symbol_l2 ||
                             mode == ContinuityMode::symbol_l1;
    const bool family_mode = mode == ContinuityMode::family_uniform ||
                             mode == ContinuityMode::family_l2 ||
                             mode == ContinuityMode::family_l1;

    // One direction per perturbed object, reused across steps.
    Symbol symbol_dir = opts.symbol_direction
                            ? *opts.symbol_direction
                            : Symbol([&] {
                                  std::vector<cx> e(count);
                                  for (auto& z : e) z = rng.cgauss();
                                  return e;
                              }());
    VectorFamily synthesis_dir = opts.synthesis_direction
                                     ? *opts.synthesis_direction
                                     : draw_direction_family(rng, spec.synthesis.dim(), count);
    VectorFamily analysis_dir = opts.analysis_direction
                                    ? *opts.analysis_direction
                                    : draw_direction_family(rng, spec.analysis.dim(), count);
    if (symbol_dir.size() != count) throw DimensionError("continuity_experiment: symbol direction length");
    if (synthesis_dir.size() != count || synthesis_dir.dim() != spec.synthesis.dim())
        throw DimensionError("continuity_experiment: synthesis direction shape");
    if (analysis_dir.size() != count || analysis_dir.dim() != spec.analysis.dim())
        throw DimensionError("continuity_experiment: analysis direction shape");

    const auto direction_metric = [&](const VectorFamily& dir) {
        std::vector<double> member_norms(dir.size());
        for (std::size_t k = 0; k < dir.size(); ++k) member_norms[k] = dir[k].norm();
        return family_metric(member_norms, mode);
    };
    const double symbol_dir_metric = symbol_metric(symbol_dir, mode);
    const double synthesis_dir_metric = direction_metric(synthesis_dir);
    const double analysis_dir_metric = direction_metric(analysis_dir);

    const double base_analysis_bound = classify(spec.analysis).bessel_bound_opt;
    const double base_synthesis_bound = classify(spec.synthesis).bessel_bound_opt;
    const LinOperator base_operator = build(spec);

    std::string paired;
    switch (mode) {
        case ContinuityMode::symbol_inf:
        case ContinuityMode::family_l1: paired = "op"; break;
        case ContinuityMode::symbol_l1:
        case ContinuityMode::family_uniform: paired = "trace"; break;
        default: paired = "hs"; break;
    }

    ContinuityResult result;
    result.mode = mode;
    result.table.name = std::string("continuity-") + to_string(mode);
    result.table.norm = paired;
    result.base_upper_bound = base_synthesis_bound;

    // Assemble the per-step ingredients first; joint mode needs the
    // uniform bound constants before any row can be bounded.
    std::vector<double> epsilons(static_cast<std::size_t>(opts.steps));
    std::vector<MultiplierSpec> perturbed;
    perturbed.reserve(epsilons.size());
    std::vector<double> analysis_bounds, synthesis_bounds;
    for (int l = 0; l < opts.steps; ++l) {
        const double eps = opts.eps0 / std::pow(2.0, l);
        epsilons[static_cast<std::size_t>(l)] = eps;

        Symbol m = spec.symbol;
        VectorFamily synth = spec.synthesis;
        VectorFamily ana = spec.analysis;
        if (eps > 0.0) {
            if (symbol_mode || mode == ContinuityMode::joint) {
                if (symbol_dir_metric == 0.0)
                    throw ValidationError("continuity_experiment: zero symbol direction");
                m = shifted(spec.symbol, symbol_dir, eps / symbol_dir_metric);
            }
            if (family_mode || mode == ContinuityMode::joint) {
                if (synthesis_dir_metric == 0.0)
                    throw ValidationError("continuity_experiment: zero synthesis direction");
                synth = shifted(spec.synthesis, synthesis_dir, eps / synthesis_dir_metric);
            }
            if (mode == ContinuityMode::joint) {
                if (analysis_dir_metric == 0.0)
                    throw ValidationError("continuity_experiment: zero analysis direction");
                ana = shifted(spec.analysis, analysis_dir, eps / analysis_dir_metric);
            }
        }
        perturbed.emplace_back(std::move(m), std::move(ana), std::move(synth));
        if (family_mode || mode == ContinuityMode::joint) {
            synthesis_bounds.push_back(classify(perturbed.back().synthesis).bessel_bound_opt);
            if (mode == ContinuityMode::joint)
                analysis_bounds.push_back(classify(perturbed.back().analysis).bessel_bound_opt);
        }
    }
    result.perturbed_upper_bounds = synthesis_bounds;

    double uniform_analysis_bound = base_analysis_bound;
    double uniform_synthesis_bound = base_synthesis_bound;
    for (double b : analysis_bounds) uniform_analysis_bound = std::max(uniform_analysis_bound, b);
    for (double b : synthesis_bounds) uniform_synthesis_bound = std::max(uniform_synthesis_bound, b);

    for (std::size_t l = 0; l < epsilons.size(); ++l) {
        const double eps = epsilons[l];
        double bound = 0.0;
        switch (mode) {
            case ContinuityMode::symbol_inf:
            case ContinuityMode::symbol_l2:
            case ContinuityMode::symbol_l1:
                bound = std::sqrt(base_analysis_bound * base_synthesis_bound) * eps;
                break;
            case ContinuityMode::family_uniform:
                bound = std::sqrt(base_analysis_bound) * spec.symbol.norm_1() * eps;
                break;
            case ContinuityMode::family_l2:
                bound = std::sqrt(base_analysis_bound) * spec.symbol.norm_2() * eps;
                break;
            case ContinuityMode::family_l1:
                bound = std::sqrt(base_analysis_bound) * spec.symbol.norm_inf() * eps;
                break;
            case ContinuityMode::joint:
                bound = eps * (std::sqrt(uniform_analysis_bound * uniform_synthesis_bound) +
                               spec.symbol.norm_2() * (std::sqrt(uniform_analysis_bound) +
                                                       std::sqrt(base_synthesis_bound)));
                break;
        }

        ConvergenceRow row;
        row.index = l;
        row.epsilon = eps;
        row.measured = paired_norm(norms(build(perturbed[l]) - base_operator), paired);
        row.bound = bound;
        row.margin = row.bound - row.measured;
        result.table.rows.push_back(row);
    }
    return result;
}

} // namespace framemul

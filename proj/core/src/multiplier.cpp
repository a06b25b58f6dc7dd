#include "framemul/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "framemul/rng.hpp"

namespace framemul {

namespace {

void require_same_count(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": index-set size mismatch " << a << " vs " << b;
        throw DimensionError(os.str());
    }
}

double bessel_bound(const VectorFamily& f) { return classify(f).bessel_bound_opt; }

LinOperator rank_one_sum(const MultiplierSpec& spec) {
    LinOperator acc(spec.synthesis.dim(), spec.analysis.dim());
    for (std::size_t k = 0; k < spec.symbol.size(); ++k)
        acc = acc + spec.symbol[k] * tensor(spec.synthesis[k], spec.analysis[k]);
    return acc;
}

} // namespace

Symbol::Symbol(std::vector<cx> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DimensionError("Symbol: empty entry list");
    std::vector<double> mags(entries_.size());
    std::vector<double> sq(entries_.size());
    double min_mag = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const cx& z = entries_[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("Symbol: non-finite entry");
        mags[k] = std::abs(z);
        sq[k] = std::norm(z);
        norm_inf_ = std::max(norm_inf_, mags[k]);
        min_mag = std::min(min_mag, mags[k]);
    }
    norm_2_ = std::sqrt(pairwise_sum(std::span<const double>(sq)));
    norm_1_ = pairwise_sum(std::span<const double>(mags));
    semi_normalized_ = min_mag > tol::kSemiNormalized * std::max(1.0, norm_inf_);
}

Symbol Symbol::constant(std::size_t count, cx value) {
    return Symbol(std::vector<cx>(count, value));
}

Symbol Symbol::unit(std::size_t count, std::size_t index) {
    if (index >= count) throw DimensionError("Symbol::unit: index out of range");
    std::vector<cx> e(count, cx{});
    e[index] = cx{1.0, 0.0};
    return Symbol(std::move(e));
}

Symbol Symbol::conjugated() const {
    std::vector<cx> e(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) e[k] = std::conj(entries_[k]);
    return Symbol(std::move(e));
}

Symbol Symbol::reciprocal() const {
    if (!semi_normalized_)
        throw ValidationError("Symbol::reciprocal: symbol is not semi-normalized");
    std::vector<cx> e(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) e[k] = cx{1.0, 0.0} / entries_[k];
    return Symbol(std::move(e));
}

Symbol Symbol::pointwise(const Symbol& other) const {
    require_same_count(size(), other.size(), "Symbol::pointwise");
    std::vector<cx> e(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) e[k] = entries_[k] * other[k];
    return Symbol(std::move(e));
}

MultiplierSpec::MultiplierSpec(Symbol m, VectorFamily analysis_family,
                               VectorFamily synthesis_family)
    : symbol(std::move(m)),
      analysis(std::move(analysis_family)),
      synthesis(std::move(synthesis_family)) {
    require_same_count(symbol.size(), analysis.size(), "MultiplierSpec(symbol/analysis)");
    require_same_count(symbol.size(), synthesis.size(), "MultiplierSpec(symbol/synthesis)");
}

LinOperator diag_operator(const Symbol& m) {
    return LinOperator::diagonal(std::span<const cx>(m.entries()));
}

LinOperator build(const MultiplierSpec& spec) {
    const LinOperator factored =
        synthesis_matrix(spec.synthesis) * diag_operator(spec.symbol) * analysis_matrix(spec.analysis);
    if (!approx_equal(factored, rank_one_sum(spec), tol::kCrossCheck))
        throw NumericalError("build: factored product and rank-one sum disagree");
    return factored;
}

MultiplierSpec adjoint_spec(const MultiplierSpec& spec) {
    return MultiplierSpec(spec.symbol.conjugated(), spec.synthesis, spec.analysis);
}

std::vector<BoundCertificate> certify_bounds(const MultiplierSpec& spec) {
    const double scale = std::sqrt(bessel_bound(spec.analysis) * bessel_bound(spec.synthesis));
    const OperatorNorms measured = norms(build(spec));
    return {
        make_certificate("multiplier-op-bound", scale * spec.symbol.norm_inf(), measured.op),
        make_certificate("multiplier-trace-bound", scale * spec.symbol.norm_1(), measured.trace),
        make_certificate("multiplier-hs-bound", scale * spec.symbol.norm_2(), measured.hs),
    };
}

TracePair trace_formula(const MultiplierSpec& spec) {
    if (spec.analysis.dim() != spec.synthesis.dim())
        throw DimensionError("trace_formula: multiplier is not square");
    TracePair t;
    t.lhs = matrix_trace(build(spec));
    std::vector<cx> terms(spec.symbol.size());
    for (std::size_t k = 0; k < spec.symbol.size(); ++k)
        terms[k] = spec.symbol[k] * inner(spec.synthesis[k], spec.analysis[k]);
    t.rhs = pairwise_sum(std::span<const cx>(terms));
    return t;
}

LinOperator compose(const MultiplierSpec& a, const MultiplierSpec& b) {
    if (b.synthesis.dim() != a.analysis.dim()) {
        std::ostringstream os;
        os << "compose: chain mismatch, first factor acts on dim " << a.analysis.dim()
           << " but second produces dim " << b.synthesis.dim();
        throw DimensionError(os.str());
    }
    const LinOperator five = synthesis_matrix(a.synthesis) * diag_operator(a.symbol) *
                             gram_matrix(a.analysis, b.synthesis) * diag_operator(b.symbol) *
                             analysis_matrix(b.analysis);
    if (!approx_equal(five, build(a) * build(b), tol::kCrossCheck))
        throw NumericalError("compose: five-factor product and direct product disagree");
    return five;
}

CalculusVerdict symbolic_calculus_test(const VectorFamily& f, const VectorFamily& g, double tol) {
    require_same_count(f.size(), g.size(), "symbolic_calculus_test");
    if (f.dim() != g.dim()) throw DimensionError("symbolic_calculus_test: dimension mismatch");

    CalculusVerdict v;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k].norm() <= tol::kAbs) {
            v.kind = CalculusVerdict::Kind::degenerate;
            v.k = k;
            v.l = 0;
            return v;
        }
    }
    for (std::size_t l = 0; l < g.size(); ++l) {
        if (g[l].norm() <= tol::kAbs) {
            v.kind = CalculusVerdict::Kind::degenerate;
            v.k = l;
            v.l = 1;
            return v;
        }
    }

    // Delta-symbol compositions multiply correctly iff every pair
    // satisfies <f_k, g_l> = delta_kl.
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t l = 0; l < g.size(); ++l) {
            const cx delta = (k == l) ? cx{1.0, 0.0} : cx{};
            const cx value = inner(f[k], g[l]);
            if (std::abs(value - delta) > tol) {
                v.kind = CalculusVerdict::Kind::violation;
                v.k = k;
                v.l = l;
                v.value = value;
                return v;
            }
        }
    }
    v.kind = CalculusVerdict::Kind::biorthogonal;
    return v;
}

BoundCertificate commute_check(const VectorFamily& riesz_basis, const Symbol& m1,
                               const Symbol& m2, double abs_tol) {
    require_same_count(riesz_basis.size(), m1.size(), "commute_check(m1)");
    require_same_count(riesz_basis.size(), m2.size(), "commute_check(m2)");
    FrameReport report = classify(riesz_basis);
    if (!report.is_riesz_basis)
        throw ValidationError("commute_check: family is not a Riesz basis");
    const VectorFamily& dual = *report.dual;
    const LinOperator a = build(MultiplierSpec(m1, riesz_basis, dual));
    const LinOperator b = build(MultiplierSpec(m2, riesz_basis, dual));
    const double measured = operator_norm(a * b - b * a);
    return make_certificate("riesz-multiplier-commutator", abs_tol, measured, 0.0, 0.0);
}

MultiplierSpec invert_riesz(const MultiplierSpec& spec) {
    FrameReport analysis_report = classify(spec.analysis);
    FrameReport synthesis_report = classify(spec.synthesis);
    if (!analysis_report.is_riesz_basis || !synthesis_report.is_riesz_basis)
        throw ValidationError("invert_riesz: both families must be Riesz bases");
    if (!spec.symbol.semi_normalized())
        throw ValidationError("invert_riesz: symbol is not semi-normalized");
    return MultiplierSpec(spec.symbol.reciprocal(), *std::move(synthesis_report.dual),
                          *std::move(analysis_report.dual));
}

Symbol recover_symbol(const LinOperator& m, const VectorFamily& analysis_family,
                      const VectorFamily& synthesis_family) {
    require_same_count(analysis_family.size(), synthesis_family.size(), "recover_symbol");
    if (m.cols() != analysis_family.dim() || m.rows() != synthesis_family.dim())
        throw DimensionError("recover_symbol: operator shape does not match the families");
    FrameReport analysis_report = classify(analysis_family);
    FrameReport synthesis_report = classify(synthesis_family);
    if (!analysis_report.is_riesz_basis || !synthesis_report.is_riesz_basis)
        throw ValidationError("recover_symbol: both families must be Riesz bases");
    const VectorFamily& dual_analysis = *analysis_report.dual;
    const VectorFamily& dual_synthesis = *synthesis_report.dual;
    std::vector<cx> entries(analysis_family.size());
    for (std::size_t k = 0; k < entries.size(); ++k)
        entries[k] = inner(m * dual_analysis[k], dual_synthesis[k]);
    return Symbol(std::move(entries));
}

BoundCertificate hs_bessel_certificate(const VectorFamily& f, const VectorFamily& g,
                                       int trials, std::uint64_t seed) {
    if (trials <= 0) throw ValidationError("hs_bessel_certificate: trials must be positive");
    const double claimed = bessel_bound(f) * bessel_bound(g);
    GaussianRng rng(seed);
    double measured = 0.0;
    for (int t = 0; t < trials; ++t) {
        const LinOperator o = rng.matrix(f.dim(), g.dim());
        const double hs = norms(o).hs;
        std::vector<double> energies(g.size());
        for (std::size_t l = 0; l < g.size(); ++l) {
            const std::vector<cx> coeffs = analysis(f, o * g[l]);
            std::vector<double> sq(coeffs.size());
            for (std::size_t k = 0; k < coeffs.size(); ++k) sq[k] = std::norm(coeffs[k]);
            energies[l] = pairwise_sum(std::span<const double>(sq));
        }
        const double energy = pairwise_sum(std::span<const double>(energies));
        measured = std::max(measured, energy / (hs * hs));
    }
    return make_certificate("hs-bessel-bound", claimed, measured, 0.0, 1e-9);
}

ConvergenceTable truncation_convergence(const MultiplierSpec& spec, TruncationOrder order) {
    std::vector<std::size_t> perm(spec.symbol.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (order == TruncationOrder::magnitude_descending) {
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(spec.symbol[a]) > std::abs(spec.symbol[b]);
        });
    }
    return truncation_convergence(spec, std::span<const std::size_t>(perm));
}

ConvergenceTable truncation_convergence(const MultiplierSpec& spec,
                                        std::span<const std::size_t> order) {
    const std::size_t count = spec.symbol.size();
    if (order.size() != count)
        throw DimensionError("truncation_convergence: order is not a permutation of the index set");
    std::vector<bool> seen(count, false);
    for (std::size_t idx : order) {
        if (idx >= count || seen[idx])
            throw ValidationError("truncation_convergence: order is not a permutation");
        seen[idx] = true;
    }

    const LinOperator full = build(spec);
    const double scale = std::sqrt(bessel_bound(spec.analysis) * bessel_bound(spec.synthesis));

    ConvergenceTable table;
    table.name = "truncation";
    table.norm = "op";
    table.rows.reserve(count + 1);
    for (std::size_t n = 0; n <= count; ++n) {
        std::vector<cx> kept(count, cx{});
        for (std::size_t j = 0; j < n; ++j) kept[order[j]] = spec.symbol[order[j]];
        double tail_max = 0.0;
        for (std::size_t j = n; j < count; ++j)
            tail_max = std::max(tail_max, std::abs(spec.symbol[order[j]]));

        const LinOperator truncated =
            build(MultiplierSpec(Symbol(std::move(kept)), spec.analysis, spec.synthesis));
        ConvergenceRow row;
        row.index = n;
        row.epsilon = tail_max;
        row.measured = operator_norm(truncated - full);
        row.bound = scale * tail_max;
        row.margin = row.bound - row.measured;
        table.rows.push_back(row);
    }
    return table;
}

} // namespace framemul

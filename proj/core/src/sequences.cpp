#include "framemul/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace framemul {

namespace {

void require_same_index_set(const VectorFamily& f, const VectorFamily& g, const char* what) {
    if (f.size() != g.size() || f.dim() != g.dim()) {
        std::ostringstream os;
        os << what << ": family shape mismatch (K=" << f.size() << ", dim=" << f.dim()
           << ") vs (K=" << g.size() << ", dim=" << g.dim() << ")";
        throw DimensionError(os.str());
    }
}

} // namespace

VectorFamily::VectorFamily(std::size_t dim, std::vector<CVector> members,
                           std::vector<std::string> labels)
    : dim_(dim), members_(std::move(members)), labels_(std::move(labels)) {
    if (dim_ == 0) throw DimensionError("VectorFamily: zero dimension");
    if (members_.empty()) throw DimensionError("VectorFamily: empty family");
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (members_[k].dim() != dim_) {
            std::ostringstream os;
            os << "VectorFamily: member " << k << " has dim " << members_[k].dim()
               << ", expected " << dim_;
            throw DimensionError(os.str());
        }
    }
    if (!labels_.empty() && labels_.size() != members_.size())
        throw DimensionError("VectorFamily: label count does not match member count");
}

std::vector<cx> analysis(const VectorFamily& f, const CVector& x) {
    if (x.dim() != f.dim()) throw DimensionError("analysis: vector dimension mismatch");
    std::vector<cx> coeffs(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) coeffs[k] = inner(x, f[k]);
    return coeffs;
}

LinOperator analysis_matrix(const VectorFamily& f) {
    LinOperator c(f.size(), f.dim());
    for (std::size_t k = 0; k < f.size(); ++k)
        for (std::size_t i = 0; i < f.dim(); ++i) c(k, i) = std::conj(f[k][i]);
    return c;
}

LinOperator synthesis_matrix(const VectorFamily& f) {
    LinOperator d(f.dim(), f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        for (std::size_t i = 0; i < f.dim(); ++i) d(i, k) = f[k][i];
    return d;
}

LinOperator frame_operator(const VectorFamily& f) {
    return synthesis_matrix(f) * analysis_matrix(f);
}

LinOperator gram_matrix(const VectorFamily& f, const VectorFamily& g) {
    if (f.dim() != g.dim()) throw DimensionError("gram_matrix: dimension mismatch");
    LinOperator gram(f.size(), g.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t m = 0; m < g.size(); ++m) gram(j, m) = inner(g[m], f[j]);
    return gram;
}

LinOperator gram_matrix(const VectorFamily& f) { return gram_matrix(f, f); }

FrameReport classify(const VectorFamily& f) {
    FrameReport report;

    const LinOperator s = frame_operator(f);
    const HermitianEigensystem sys = hermitian_eigensystem(s);
    const double a_raw = sys.values.front();
    const double b_raw = sys.values.back();
    report.bessel_bound_opt = std::max(0.0, b_raw);
    report.is_frame = a_raw > tol::kFrameRank * report.bessel_bound_opt;
    if (report.is_frame) report.lower_bound_opt = a_raw;

    // Spectrum of the Gram matrix equals the spectrum of S restricted to
    // the closed span, so linear independence with Riesz bounds is read
    // off its extreme eigenvalues.
    const std::vector<double> gram_eigs = hermitian_eigenvalues(gram_matrix(f));
    const double g_min = gram_eigs.front();
    const double g_max = std::max(0.0, gram_eigs.back());
    report.is_riesz_sequence = g_min > tol::kFrameRank * g_max;
    if (report.is_riesz_sequence) report.riesz_bounds = std::make_pair(g_min, g_max);

    report.is_riesz_basis = report.is_frame && f.size() == f.dim();

    if (report.is_frame) {
        const LinOperator s_inv = hermitian_inverse(s);
        std::vector<CVector> dual_members;
        dual_members.reserve(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) dual_members.push_back(s_inv * f[k]);
        report.dual = VectorFamily(f.dim(), std::move(dual_members), f.labels());
    }
    return report;
}

VectorFamily canonical_dual(const VectorFamily& f) {
    FrameReport report = classify(f);
    if (!report.is_frame)
        throw ValidationError("canonical_dual: family is not a frame (lower bound vanishes)");
    return *std::move(report.dual);
}

bool is_biorthogonal(const VectorFamily& f, const VectorFamily& g, double tol) {
    require_same_index_set(f, g, "is_biorthogonal");
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t l = 0; l < g.size(); ++l) {
            const cx delta = (k == l) ? cx{1.0, 0.0} : cx{};
            if (std::abs(inner(f[k], g[l]) - delta) > tol) return false;
        }
    }
    return true;
}

} // namespace framemul

#include "framemul/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace framemul {

namespace {

constexpr std::size_t kPairwiseBase = 8;

template <typename T>
T pairwise_sum_impl(std::span<const T> xs) {
    if (xs.size() <= kPairwiseBase) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum_impl(xs.subspan(0, half)) + pairwise_sum_impl(xs.subspan(half));
}

bool is_finite(const cx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(std::span<const cx> entries, const char* what) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!is_finite(entries[i])) {
            std::ostringstream os;
            os << what << ": non-finite entry at index " << i;
            throw ValidationError(os.str());
        }
    }
}

void require_same_shape(const LinOperator& a, const LinOperator& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
           << b.rows() << "x" << b.cols();
        throw DimensionError(os.str());
    }
}

Eigen::MatrixXcd to_eigen(const LinOperator& o) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(o.rows()), static_cast<Eigen::Index>(o.cols()));
    for (std::size_t i = 0; i < o.rows(); ++i)
        for (std::size_t j = 0; j < o.cols(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = o(i, j);
    return m;
}

std::string condition_report(const LinOperator& o) {
    std::ostringstream os;
    os << o.rows() << "x" << o.cols() << " matrix, max|entry| = " << max_abs(o);
    return os.str();
}

void reject_non_finite_for_factorization(const LinOperator& o, const char* what) {
    for (std::size_t i = 0; i < o.rows(); ++i) {
        for (std::size_t j = 0; j < o.cols(); ++j) {
            if (!is_finite(o(i, j))) {
                std::ostringstream os;
                os << what << ": non-finite entry at (" << i << "," << j << ")";
                throw NumericalError(os.str());
            }
        }
    }
}

} // namespace

cx pairwise_sum(std::span<const cx> xs) { return pairwise_sum_impl(xs); }
double pairwise_sum(std::span<const double> xs) { return pairwise_sum_impl(xs); }

CVector::CVector(std::vector<cx> entries) : entries_(std::move(entries)) {
    require_finite(entries_, "CVector");
}

CVector CVector::zero(std::size_t dim) {
    CVector v;
    v.entries_.assign(dim, cx{});
    return v;
}

CVector CVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("CVector::basis: index out of range");
    CVector v = zero(dim);
    v[index] = cx{1.0, 0.0};
    return v;
}

double CVector::norm() const {
    std::vector<double> sq(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) sq[i] = std::norm(entries_[i]);
    return std::sqrt(pairwise_sum(std::span<const double>(sq)));
}

CVector operator+(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("CVector +: dimension mismatch");
    CVector r = CVector::zero(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

CVector operator-(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("CVector -: dimension mismatch");
    CVector r = CVector::zero(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

CVector operator*(cx scalar, const CVector& v) {
    CVector r = CVector::zero(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = scalar * v[i];
    return r;
}

LinOperator::LinOperator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cx{}) {
    if (rows == 0 || cols == 0) throw DimensionError("LinOperator: zero dimension");
}

LinOperator::LinOperator(std::size_t rows, std::size_t cols, std::vector<cx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimensionError("LinOperator: zero dimension");
    if (entries_.size() != rows * cols)
        throw DimensionError("LinOperator: entry count does not match shape");
    require_finite(entries_, "LinOperator");
}

LinOperator LinOperator::identity(std::size_t n) {
    LinOperator r(n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = cx{1.0, 0.0};
    return r;
}

LinOperator LinOperator::diagonal(std::span<const cx> diag) {
    LinOperator r(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) r(i, i) = diag[i];
    return r;
}

LinOperator operator+(const LinOperator& a, const LinOperator& b) {
    require_same_shape(a, b, "LinOperator +");
    LinOperator r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

LinOperator operator-(const LinOperator& a, const LinOperator& b) {
    require_same_shape(a, b, "LinOperator -");
    LinOperator r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

LinOperator operator*(const LinOperator& a, const LinOperator& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream os;
        os << "LinOperator *: inner dimension mismatch " << a.rows() << "x" << a.cols()
           << " vs " << b.rows() << "x" << b.cols();
        throw DimensionError(os.str());
    }
    LinOperator r(a.rows(), b.cols());
    std::vector<cx> prod(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t k = 0; k < a.cols(); ++k) prod[k] = a(i, k) * b(k, j);
            r(i, j) = pairwise_sum(std::span<const cx>(prod));
        }
    }
    return r;
}

LinOperator operator*(cx scalar, const LinOperator& a) {
    LinOperator r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = scalar * a(i, j);
    return r;
}

CVector operator*(const LinOperator& a, const CVector& v) {
    if (a.cols() != v.dim()) throw DimensionError("LinOperator * CVector: dimension mismatch");
    CVector r = CVector::zero(a.rows());
    std::vector<cx> prod(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) prod[k] = a(i, k) * v[k];
        r[i] = pairwise_sum(std::span<const cx>(prod));
    }
    return r;
}

cx inner(const CVector& f, const CVector& g) {
    if (f.dim() != g.dim()) throw DimensionError("inner: dimension mismatch");
    std::vector<cx> prod(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) prod[i] = f[i] * std::conj(g[i]);
    return pairwise_sum(std::span<const cx>(prod));
}

LinOperator tensor(const CVector& f, const CVector& g) {
    LinOperator r(f.dim(), g.dim());
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) r(i, j) = f[i] * std::conj(g[j]);
    return r;
}

std::vector<double> singular_values(const LinOperator& o) {
    reject_non_finite_for_factorization(o, "singular_values");
    const Eigen::MatrixXcd m = to_eigen(o);
    Eigen::VectorXd sv;
    // Jacobi for small matrices, divide-and-conquer above; both are
    // deterministic for a fixed input.
    if (std::min(o.rows(), o.cols()) <= 32) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        if (svd.info() != Eigen::Success)
            throw NumericalError("SVD failed: " + condition_report(o));
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        if (svd.info() != Eigen::Success)
            throw NumericalError("SVD failed: " + condition_report(o));
        sv = svd.singularValues();
    }
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

OperatorNorms norms(const LinOperator& o) {
    const std::vector<double> sv = singular_values(o);
    OperatorNorms n;
    n.op = sv.empty() ? 0.0 : sv.front();
    std::vector<double> sq(sv.size());
    for (std::size_t i = 0; i < sv.size(); ++i) sq[i] = sv[i] * sv[i];
    const double hs_sq = pairwise_sum(std::span<const double>(sq));
    n.hs = std::sqrt(hs_sq);
    n.trace = pairwise_sum(std::span<const double>(sv));

    std::vector<double> frob(o.entries().size());
    for (std::size_t i = 0; i < frob.size(); ++i) frob[i] = std::norm(o.entries()[i]);
    const double frob_sq = pairwise_sum(std::span<const double>(frob));
    const double scale = std::max({hs_sq, frob_sq, tol::kAbs});
    if (std::abs(hs_sq - frob_sq) > 1e-9 * scale) {
        std::ostringstream os;
        os << "norms: HS/Frobenius cross-check failed (" << hs_sq << " vs " << frob_sq
           << ") for " << condition_report(o);
        throw NumericalError(os.str());
    }
    return n;
}

double operator_norm(const LinOperator& o) {
    const std::vector<double> sv = singular_values(o);
    return sv.empty() ? 0.0 : sv.front();
}

LinOperator adjoint(const LinOperator& o) {
    LinOperator r(o.cols(), o.rows());
    for (std::size_t i = 0; i < o.rows(); ++i)
        for (std::size_t j = 0; j < o.cols(); ++j) r(j, i) = std::conj(o(i, j));
    return r;
}

cx matrix_trace(const LinOperator& o) {
    if (o.rows() != o.cols()) throw DimensionError("matrix_trace: non-square operator");
    std::vector<cx> diag(o.rows());
    for (std::size_t i = 0; i < o.rows(); ++i) diag[i] = o(i, i);
    return pairwise_sum(std::span<const cx>(diag));
}

double max_abs(const LinOperator& o) {
    double m = 0.0;
    for (const cx& z : o.entries()) m = std::max(m, std::abs(z));
    return m;
}

HermitianEigensystem hermitian_eigensystem(const LinOperator& o) {
    if (o.rows() != o.cols()) throw DimensionError("hermitian_eigensystem: non-square operator");
    reject_non_finite_for_factorization(o, "hermitian_eigensystem");
    const LinOperator adj = adjoint(o);
    const double scale = operator_norm(o);
    const double dev = operator_norm(o - adj);
    if (dev > tol::kHermitian * scale) {
        std::ostringstream os;
        os << "hermitian_eigensystem: input not Hermitian within tolerance (||O-O*|| = " << dev
           << ", ||O|| = " << scale << ")";
        throw ValidationError(os.str());
    }
    const LinOperator h = cx{0.5, 0.0} * (o + adj);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
    if (es.info() != Eigen::Success)
        throw NumericalError("hermitian_eigensystem: eigensolver failed for " + condition_report(o));

    HermitianEigensystem sys;
    const Eigen::VectorXd& vals = es.eigenvalues();
    sys.values.assign(vals.data(), vals.data() + vals.size());
    sys.vectors = LinOperator(o.rows(), o.cols());
    const Eigen::MatrixXcd& vecs = es.eigenvectors();
    for (std::size_t i = 0; i < o.rows(); ++i)
        for (std::size_t j = 0; j < o.cols(); ++j)
            sys.vectors(i, j) = vecs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return sys;
}

std::vector<double> hermitian_eigenvalues(const LinOperator& o) {
    return hermitian_eigensystem(o).values;
}

LinOperator hermitian_inverse(const LinOperator& o) {
    const HermitianEigensystem sys = hermitian_eigensystem(o);
    if (sys.values.front() <= 0.0)
        throw ValidationError("hermitian_inverse: spectrum not strictly positive");
    std::vector<cx> recip(sys.values.size());
    for (std::size_t i = 0; i < sys.values.size(); ++i) recip[i] = cx{1.0 / sys.values[i], 0.0};
    return sys.vectors * LinOperator::diagonal(recip) * adjoint(sys.vectors);
}

bool approx_equal(const LinOperator& a, const LinOperator& b, double rel, double abs) {
    require_same_shape(a, b, "approx_equal");
    const double scale = std::max(max_abs(a), max_abs(b));
    const double limit = rel * scale + abs;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        if (std::abs(a.entries()[i] - b.entries()[i]) > limit) return false;
    return true;
}

} // namespace framemul

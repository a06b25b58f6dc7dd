#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "framemul/errors.hpp"
#include "framemul/tolerances.hpp"

namespace framemul {

using cx = std::complex<double>;

// Deterministic sum: index-ascending pairwise tree with a short linear
// base case. Every inner product and matrix product in the library
// reduces through this, so results are bit-reproducible across runs.
cx pairwise_sum(std::span<const cx> xs);
double pairwise_sum(std::span<const double> xs);

// A vector in C^n. Construction from entries validates finiteness.
class CVector {
public:
    CVector() = default;
    explicit CVector(std::vector<cx> entries);
    static CVector zero(std::size_t dim);
    static CVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return entries_.size(); }
    cx& operator[](std::size_t i) { return entries_[i]; }
    const cx& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<cx>& entries() const { return entries_; }

    double norm() const;

    friend bool operator==(const CVector&, const CVector&) = default;

private:
    std::vector<cx> entries_;
};

CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector operator*(cx scalar, const CVector& v);

// A dense operator (row-major complex matrix). Houses C, D, S, G, M and
// the diagonal symbol operator.
class LinOperator {
public:
    LinOperator() = default;
    LinOperator(std::size_t rows, std::size_t cols);  // zero-filled
    LinOperator(std::size_t rows, std::size_t cols, std::vector<cx> entries);
    static LinOperator identity(std::size_t n);
    static LinOperator diagonal(std::span<const cx> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<cx>& entries() const { return entries_; }

    friend bool operator==(const LinOperator&, const LinOperator&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> entries_;
};

LinOperator operator+(const LinOperator& a, const LinOperator& b);
LinOperator operator-(const LinOperator& a, const LinOperator& b);
LinOperator operator*(const LinOperator& a, const LinOperator& b);
LinOperator operator*(cx scalar, const LinOperator& a);
CVector operator*(const LinOperator& a, const CVector& v);

// <f, g> = sum_i f_i conj(g_i); linear in the first slot.
cx inner(const CVector& f, const CVector& g);

// Rank-one operator h |-> <h, g> f, i.e. entries f_i conj(g_j).
// All three norms of the result equal ||f|| * ||g||.
LinOperator tensor(const CVector& f, const CVector& g);

struct OperatorNorms {
    double op = 0.0;     // largest singular value
    double hs = 0.0;     // sqrt of sum of squared singular values
    double trace = 0.0;  // sum of singular values
};

// All three norms from a full SVD; hs is cross-checked against the
// Frobenius sum of squared entry magnitudes.
OperatorNorms norms(const LinOperator& o);
double operator_norm(const LinOperator& o);

// Singular values, descending.
std::vector<double> singular_values(const LinOperator& o);

LinOperator adjoint(const LinOperator& o);

cx matrix_trace(const LinOperator& o);
double max_abs(const LinOperator& o);

// Real spectrum of a Hermitian operator, ascending. The input must be
// square and satisfy ||O - O*||_op <= 1e-9 ||O||_op; it is symmetrized
// to (O + O*)/2 before the solve.
std::vector<double> hermitian_eigenvalues(const LinOperator& o);

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    LinOperator vectors;         // column k is the eigenvector of values[k]
};
HermitianEigensystem hermitian_eigensystem(const LinOperator& o);

// V diag(1/lambda) V*; requires a strictly positive spectrum.
LinOperator hermitian_inverse(const LinOperator& o);

// Entrywise agreement against the largest magnitude involved.
bool approx_equal(const LinOperator& a, const LinOperator& b,
                  double rel = tol::kRel, double abs = tol::kAbs);

} // namespace framemul

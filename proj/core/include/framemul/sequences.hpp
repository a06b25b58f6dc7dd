#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framemul/linalg.hpp"

namespace framemul {

// An indexed finite family of vectors in C^n (the analysis/synthesis
// sequences). Indices run 0..size()-1; labels are annotations only,
// e.g. "(p,q)" lattice points.
class VectorFamily {
public:
    VectorFamily(std::size_t dim, std::vector<CVector> members,
                 std::vector<std::string> labels = {});

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    const CVector& operator[](std::size_t k) const { return members_[k]; }
    const std::vector<CVector>& members() const { return members_; }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const VectorFamily&, const VectorFamily&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<CVector> members_;
    std::vector<std::string> labels_;
};

// Classification of a family. Every finite family is Bessel; the flags
// refine that. Optimal bounds are the extreme eigenvalues of the frame
// operator S.
struct FrameReport {
    bool is_bessel = true;
    double bessel_bound_opt = 0.0;                       // B_opt
    bool is_frame = false;
    std::optional<double> lower_bound_opt;               // A_opt, when a frame
    bool is_riesz_basis = false;
    bool is_riesz_sequence = false;
    std::optional<std::pair<double, double>> riesz_bounds;  // on the span, Gram spectrum extremes
    std::optional<VectorFamily> dual;                    // canonical dual, when a frame
};

// Coefficient sequence (<x, psi_k>)_k.
std::vector<cx> analysis(const VectorFamily& f, const CVector& x);

// K x n matrix with row k = conj(psi_k); analysis_matrix(f) * x == analysis(f, x).
LinOperator analysis_matrix(const VectorFamily& f);

// n x K matrix with column k = psi_k; the adjoint of the analysis matrix.
LinOperator synthesis_matrix(const VectorFamily& f);

// S = D C = sum_k psi_k (x) conj(psi_k); Hermitian positive semidefinite.
LinOperator frame_operator(const VectorFamily& f);

// Cross-Gram matrix, entry (j, m) = <g_m, f_j>; equals C_f D_g.
LinOperator gram_matrix(const VectorFamily& f, const VectorFamily& g);
LinOperator gram_matrix(const VectorFamily& f);

FrameReport classify(const VectorFamily& f);

// (S^{-1} psi_k); bounds 1/B_opt, 1/A_opt. Errors unless the family is a frame.
VectorFamily canonical_dual(const VectorFamily& f);

// |<f_k, g_l> - delta_kl| <= tol for all pairs.
bool is_biorthogonal(const VectorFamily& f, const VectorFamily& g, double tol);

} // namespace framemul

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "framemul/certify.hpp"
#include "framemul/sequences.hpp"

namespace framemul {

// A finite multiplier symbol with cached sequence norms.
// norm_inf <= norm_2 <= norm_1 always holds for finite sequences.
class Symbol {
public:
    explicit Symbol(std::vector<cx> entries);
    static Symbol constant(std::size_t count, cx value);
    static Symbol unit(std::size_t count, std::size_t index);  // delta at one slot

    std::size_t size() const { return entries_.size(); }
    const cx& operator[](std::size_t k) const { return entries_[k]; }
    const std::vector<cx>& entries() const { return entries_; }

    double norm_inf() const { return norm_inf_; }
    double norm_2() const { return norm_2_; }
    double norm_1() const { return norm_1_; }

    // 0 < min|m_k|, detected scale-aware: min|m_k| > 1e-12 max(1, max|m_k|).
    bool semi_normalized() const { return semi_normalized_; }

    Symbol conjugated() const;
    Symbol reciprocal() const;                 // 1/m_k; requires semi-normalized
    Symbol pointwise(const Symbol& other) const;  // entrywise product

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<cx> entries_;
    double norm_inf_ = 0.0;
    double norm_2_ = 0.0;
    double norm_1_ = 0.0;
    bool semi_normalized_ = false;
};

// Multiplier ingredients: f |-> sum_k m_k <f, psi_k> phi_k with analysis
// family (psi_k) and synthesis family (phi_k) of the same length.
struct MultiplierSpec {
    Symbol symbol;
    VectorFamily analysis;   // psi_k; coefficients are <f, psi_k>
    VectorFamily synthesis;  // phi_k; output is expanded in these

    MultiplierSpec(Symbol m, VectorFamily analysis_family, VectorFamily synthesis_family);
};

// K x K diagonal matrix of the symbol entries. Its norms equal the
// symbol norms exactly: op = ||m||_inf, hs = ||m||_2, trace = ||m||_1.
LinOperator diag_operator(const Symbol& m);

// M = D_phi diag(m) C_psi, an n2 x n1 matrix. The factored product is
// cross-checked entrywise against the rank-one sum
// sum_k m_k phi_k (x) conj(psi_k); disagreement raises NumericalError.
LinOperator build(const MultiplierSpec& spec);

// Ingredients of the adjoint: conjugated symbol, families swapped.
// build(adjoint_spec(s)) == adjoint(build(s)).
MultiplierSpec adjoint_spec(const MultiplierSpec& spec);

// The three norm certificates against sqrt(B_phi B_psi) times the
// matching symbol norm (op/inf, trace/1, hs/2), using optimal Bessel
// bounds from classify.
std::vector<BoundCertificate> certify_bounds(const MultiplierSpec& spec);

struct TracePair {
    cx lhs;  // matrix trace of the built multiplier
    cx rhs;  // sum_k m_k <phi_k, psi_k>
};
// Square case only (analysis and synthesis dims equal).
TracePair trace_formula(const MultiplierSpec& spec);

// Composition a after b as the five-factor product
// D_{phi_a} diag(m_a) Gram(psi_a, phi_b) diag(m_b) C_{psi_b},
// cross-checked against build(a) * build(b).
LinOperator compose(const MultiplierSpec& a, const MultiplierSpec& b);

// Outcome of the delta-symbol composition test over all index pairs:
// multiplier composition agrees with symbol multiplication iff the two
// families are biorthogonal.
struct CalculusVerdict {
    enum class Kind { biorthogonal, violation, degenerate };
    Kind kind = Kind::biorthogonal;
    std::size_t k = 0;  // witness pair (violation) or member index (degenerate)
    std::size_t l = 0;  // second index; for degenerate, 0 = first family, 1 = second
    cx value{};         // offending inner product, when kind == violation
};
CalculusVerdict symbolic_calculus_test(const VectorFamily& f, const VectorFamily& g, double tol);

// ||AB - BA||_op for the two multipliers with symbols m1, m2 over a
// Riesz basis and its canonical dual; both products equal the
// product-symbol multiplier, so the commutator vanishes.
BoundCertificate commute_check(const VectorFamily& riesz_basis, const Symbol& m1,
                               const Symbol& m2, double abs_tol = tol::kCommutator);

// Inverse ingredients: symbol 1/m_k, analysis = dual of synthesis,
// synthesis = dual of analysis. Requires both families to be Riesz
// bases and a semi-normalized symbol.
MultiplierSpec invert_riesz(const MultiplierSpec& spec);

// m_k = <M dual_psi_k, dual_phi_k>; recovers the symbol of any
// multiplier built over the given Riesz bases.
Symbol recover_symbol(const LinOperator& m, const VectorFamily& analysis_family,
                      const VectorFamily& synthesis_family);

// For random operators O, the normalized tensor-coefficient energy
// sum_{k,l} |<O phi_l, psi_k>|^2 / ||O||_HS^2 never exceeds B1 B2: the
// rank-one tensors form a Bessel family in the Hilbert-Schmidt space.
BoundCertificate hs_bessel_certificate(const VectorFamily& f, const VectorFamily& g,
                                       int trials, std::uint64_t seed = 0);

enum class TruncationOrder { magnitude_descending, index_ascending };

// Rows N = 0..K: zero all but the first N symbol entries in the given
// order and measure ||M_N - M||_op against sqrt(B B') * tail_max.
ConvergenceTable truncation_convergence(const MultiplierSpec& spec,
                                        TruncationOrder order = TruncationOrder::magnitude_descending);
ConvergenceTable truncation_convergence(const MultiplierSpec& spec,
                                        std::span<const std::size_t> order);

} // namespace framemul

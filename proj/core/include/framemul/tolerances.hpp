#pragma once

namespace framemul::tol {

// Default comparison tolerances; always interpreted relative to the
// largest magnitude involved, with an absolute floor.
inline constexpr double kRel = 1e-9;
inline constexpr double kAbs = 1e-12;

// Agreement required between redundant computation routes
// (factored product vs rank-one sum, matrix identities).
inline constexpr double kCrossCheck = 1e-10;

// ||O - O*||_op <= kHermitian * ||O||_op to accept an operator as Hermitian.
inline constexpr double kHermitian = 1e-9;

// Frame decision: A_opt > kFrameRank * B_opt (scale invariant).
inline constexpr double kFrameRank = 1e-10;

// Semi-normalized symbol: min|m_k| > kSemiNormalized * max(1, max|m_k|).
inline constexpr double kSemiNormalized = 1e-12;

// Residual allowed on M * M^{-1} - I for Riesz multiplier inversion.
inline constexpr double kInversion = 1e-8;

// Slack granted to a certificate, relative to the claimed bound.
inline constexpr double kCertSlackRel = 1e-10;

// Commutator of Riesz multipliers over the same family.
inline constexpr double kCommutator = 1e-9;

} // namespace framemul::tol

namespace framemul {

// Runtime-adjustable comparison tolerances (CLI reads FRAMEMUL_TOL).
struct Tolerances {
    double rel = tol::kRel;
    double abs = tol::kAbs;
};

} // namespace framemul

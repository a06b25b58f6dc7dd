#pragma once

#include <cstdint>
#include <string>

#include "framemul/multiplier.hpp"

namespace framemul {

enum class FamilyKind {
    onb,                      // standard basis of C^n
    random_bessel,            // seeded complex Gaussian members
    random_frame,             // redrawn until A_opt > 1e-6 B_opt
    riesz_from_matrix,        // columns of an invertible matrix with a target condition number
    gabor_regular,            // translates-modulates of a Gaussian window on the (a,b) lattice
    gabor_irregular,          // seeded lattice subset of size K, frame-checked
    harmonic_counterexample,  // { e_q / p : 1 <= p <= P, 1 <= q <= n }, tight
};

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct GenSpec {
    FamilyKind kind = FamilyKind::onb;
    std::size_t dim = 1;
    std::size_t count = 0;  // K; 0 means the kind's default
    std::uint64_t seed = 0;
    std::size_t lattice_a = 1;  // Gabor time step, must divide dim
    std::size_t lattice_b = 1;  // Gabor frequency step, must divide dim
    std::size_t harmonic_p = 2;  // P, the number of 1/p shells
    double condition = 1.0;      // target sigma_max/sigma_min for riesz_from_matrix
};

// Deterministic per seed: identical GenSpec values produce bit-identical
// families. Infeasible parameters (e.g. no frame subset within the
// retry budget) raise ValidationError naming the retry count.
VectorFamily generate(const GenSpec& g);

// Harmonic family with symbol m_{p,q} = p^2 on both slots: the built
// operator is P * I (operator norm P) while ||m||_inf = P^2, so the
// symbol's sup norm outgrows the operator norm linearly in P.
MultiplierSpec unbounded_symbol_fixture(std::size_t dim, std::size_t p_max);

} // namespace framemul

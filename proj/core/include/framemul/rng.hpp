#pragma once

#include <cstdint>
#include <random>

#include "framemul/linalg.hpp"

namespace framemul {

// Deterministic Gaussian source. The algorithm is part of the
// reproducibility contract: mt19937_64, uniform doubles built from the
// top 53 bits, Box-Muller for normals. Identical seeds replay identical
// streams.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in (0, 1].
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal.
    double gauss();

    // Independent N(0,1) real and imaginary parts.
    cx cgauss() {
        const double re = gauss();
        const double im = gauss();
        return {re, im};
    }

    // Uniform in [0, bound).
    std::uint64_t integer(std::uint64_t bound);

    CVector vector(std::size_t dim);
    CVector unit_vector(std::size_t dim);
    LinOperator matrix(std::size_t rows, std::size_t cols);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace framemul

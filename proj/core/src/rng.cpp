#include "framemul/rng.hpp"

#include <cmath>
#include <numbers>

namespace framemul {

double GaussianRng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t GaussianRng::integer(std::uint64_t bound) {
    if (bound == 0) throw ValidationError("GaussianRng::integer: zero bound");
    std::uint64_t x, r;
    do {
        x = gen_();
        r = x % bound;
    } while (x - r > std::uint64_t(0) - bound);
    return r;
}

CVector GaussianRng::vector(std::size_t dim) {
    CVector v = CVector::zero(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = cgauss();
    return v;
}

CVector GaussianRng::unit_vector(std::size_t dim) {
    CVector v = vector(dim);
    double n = v.norm();
    while (n == 0.0) {  // essentially unreachable, but keeps the contract total
        v = vector(dim);
        n = v.norm();
    }
    return cx{1.0 / n, 0.0} * v;
}

LinOperator GaussianRng::matrix(std::size_t rows, std::size_t cols) {
    LinOperator m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
}

} // namespace framemul

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framemul/linalg.hpp"
#include "framemul/rng.hpp"
#include "oracles.hpp"

using namespace framemul;
using oracles::close;
using oracles::close_rel;

namespace {

LinOperator mat2(cx a, cx b, cx c, cx d) { return LinOperator(2, 2, {a, b, c, d}); }

} // namespace

TEST_CASE("inner products") {
    const CVector e1({cx{1, 0}, cx{0, 0}});
    const CVector e2({cx{0, 0}, cx{1, 0}});
    CHECK(inner(e1, e2) == cx{0, 0});

    // linear in the first slot: <(i,0),(1,0)> = i
    const CVector f({cx{0, 1}, cx{0, 0}});
    CHECK(inner(f, e1) == cx{0, 1});

    const CVector a({cx{1, 0}, cx{2, 0}});
    const CVector b({cx{3, 0}, cx{4, 0}});
    CHECK(inner(a, b) == cx{11, 0});  // 1*3 + 2*4

    CHECK_THROWS_AS(inner(a, CVector({cx{1, 0}})), DimensionError);
}

TEST_CASE("tensor product examples") {
    const CVector e1 = CVector::basis(2, 0);
    const LinOperator p = tensor(e1, e1);
    CHECK(p == mat2({1, 0}, {0, 0}, {0, 0}, {0, 0}));

    // all three norms multiply: f=(2,0), g=(0,3)
    const CVector f({cx{2, 0}, cx{0, 0}});
    const CVector g({cx{0, 0}, cx{3, 0}});
    const OperatorNorms n = norms(tensor(f, g));
    CHECK(close(n.op, 6.0, 1e-12));
    CHECK(close(n.hs, 6.0, 1e-12));
    CHECK(close(n.trace, 6.0, 1e-12));

    const CVector ones({cx{1, 0}, cx{1, 0}});
    CHECK(tensor(ones, e1) == mat2({1, 0}, {0, 0}, {1, 0}, {0, 0}));
}

TEST_CASE("tensor acts as h |-> <h,g> f and satisfies the HS inner identity") {
    GaussianRng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const CVector f = rng.vector(3);
        const CVector g = rng.vector(4);
        const CVector h = rng.vector(4);
        const CVector u = rng.vector(3);
        const LinOperator t = tensor(f, g);
        const CVector th = t * h;
        const CVector expected = inner(h, g) * f;
        for (std::size_t i = 0; i < 3; ++i) CHECK(close(th[i], expected[i], 1e-12));
        // <(f (x) g~) h, u> = <h, g> <f, u>
        CHECK(close(inner(th, u), inner(h, g) * inner(f, u), 1e-11));
    }
}

TEST_CASE("tensor norm multiplicativity, 1000 random pairs") {
    GaussianRng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n1 = 1 + rng.integer(5);
        const std::size_t n2 = 1 + rng.integer(5);
        const CVector f = rng.vector(n1);
        const CVector g = rng.vector(n2);
        const double product = f.norm() * g.norm();
        const OperatorNorms n = norms(tensor(f, g));
        CHECK(std::abs(n.op - product) <= 1e-10 * product);
        CHECK(std::abs(n.hs - product) <= 1e-10 * product);
        CHECK(std::abs(n.trace - product) <= 1e-10 * product);
    }
}

TEST_CASE("norms from singular values") {
    const OperatorNorms id3 = norms(LinOperator::identity(3));
    CHECK(close(id3.op, 1.0, 1e-14));
    CHECK(close(id3.hs, std::sqrt(3.0), 1e-14));
    CHECK(close(id3.trace, 3.0, 1e-14));

    const std::vector<cx> d = {cx{3, 0}, cx{1, 0}, cx{2, 0}};
    const OperatorNorms dn = norms(LinOperator::diagonal(d));
    CHECK(close(dn.op, 3.0, 1e-14));
    CHECK(close(dn.hs, std::sqrt(14.0), 1e-14));
    CHECK(close(dn.trace, 6.0, 1e-14));

    const OperatorNorms zero = norms(LinOperator(2, 3));
    CHECK(zero.op == 0.0);
    CHECK(zero.hs == 0.0);
    CHECK(zero.trace == 0.0);
}

TEST_CASE("norm chain op <= hs <= trace and Frobenius cross-check") {
    GaussianRng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng.integer(6);
        const std::size_t c = 1 + rng.integer(6);
        const LinOperator o = rng.matrix(r, c);
        const OperatorNorms n = norms(o);
        CHECK(n.op <= n.hs * (1.0 + 1e-10));
        CHECK(n.hs <= n.trace * (1.0 + 1e-10));

        double frob_sq = 0.0;
        for (const cx& z : o.entries()) frob_sq += std::norm(z);
        CHECK(std::abs(n.hs * n.hs - frob_sq) <= 1e-9 * frob_sq);
    }
}

TEST_CASE("operator norm agrees with a power-iteration oracle") {
    GaussianRng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const LinOperator o = rng.matrix(4 + rng.integer(3), 4 + rng.integer(3));
        const double oracle = oracles::power_iteration_op_norm(o, 1000 + trial);
        CHECK(close_rel(operator_norm(o), oracle, 1e-8));
    }
}

TEST_CASE("non-finite entries are rejected") {
    CHECK_THROWS_AS(CVector({cx{std::nan(""), 0}}), ValidationError);
    CHECK_THROWS_AS(LinOperator(1, 1, {cx{std::numeric_limits<double>::infinity(), 0}}),
                    ValidationError);

    LinOperator o = LinOperator::identity(2);
    o(0, 0) = cx{std::nan(""), 0};  // mutation bypasses construction checks
    CHECK_THROWS_AS(singular_values(o), NumericalError);
    CHECK_THROWS_AS(hermitian_eigenvalues(o), NumericalError);
}

TEST_CASE("adjoint") {
    CHECK(adjoint(mat2({0, 0}, {1, 0}, {0, 0}, {0, 0})) ==
          mat2({0, 0}, {0, 0}, {1, 0}, {0, 0}));
    CHECK(adjoint(LinOperator::diagonal(std::vector<cx>{cx{0, 1}})) ==
          LinOperator::diagonal(std::vector<cx>{cx{0, -1}}));

    GaussianRng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const LinOperator o = rng.matrix(3, 5);
        CHECK(adjoint(adjoint(o)) == o);
        const OperatorNorms a = norms(o);
        const OperatorNorms b = norms(adjoint(o));
        CHECK(close_rel(a.op, b.op, 1e-12));
        CHECK(close_rel(a.hs, b.hs, 1e-12));
        CHECK(close_rel(a.trace, b.trace, 1e-12));
    }
}

TEST_CASE("hermitian eigenvalues") {
    const std::vector<double> diag = hermitian_eigenvalues(
        LinOperator::diagonal(std::vector<cx>{cx{2, 0}, cx{1, 0}}));
    CHECK(close(diag[0], 1.0, 1e-14));
    CHECK(close(diag[1], 2.0, 1e-14));

    // characteristic polynomial lambda^2 - 1
    const std::vector<double> flip =
        hermitian_eigenvalues(mat2({0, 0}, {1, 0}, {1, 0}, {0, 0}));
    CHECK(close(flip[0], -1.0, 1e-14));
    CHECK(close(flip[1], 1.0, 1e-14));

    for (double v : hermitian_eigenvalues(LinOperator::identity(5)))
        CHECK(close(v, 1.0, 1e-14));

    CHECK_THROWS_AS(hermitian_eigenvalues(mat2({0, 0}, {1, 0}, {0, 0}, {0, 0})),
                    ValidationError);
    CHECK_THROWS_AS(hermitian_eigenvalues(LinOperator(2, 3)), DimensionError);
}

TEST_CASE("hermitian eigensystem reconstructs and inverts") {
    GaussianRng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const LinOperator a = rng.matrix(4, 4);
        const LinOperator h = adjoint(a) * a + LinOperator::identity(4);  // PD
        const HermitianEigensystem sys = hermitian_eigensystem(h);
        std::vector<cx> lambda(sys.values.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = cx{sys.values[i], 0};
        const LinOperator recon =
            sys.vectors * LinOperator::diagonal(lambda) * adjoint(sys.vectors);
        CHECK(approx_equal(recon, h, 1e-10));

        const LinOperator inv = hermitian_inverse(h);
        CHECK(approx_equal(inv * h, LinOperator::identity(4), 1e-9));
    }
    CHECK_THROWS_AS(hermitian_inverse(LinOperator(2, 2)), ValidationError);  // zero matrix
}

TEST_CASE("matrix arithmetic shape errors") {
    CHECK_THROWS_AS(LinOperator(2, 3) * LinOperator(2, 3), DimensionError);
    CHECK_THROWS_AS(LinOperator(2, 3) + LinOperator(3, 2), DimensionError);
    CHECK_THROWS_AS(matrix_trace(LinOperator(2, 3)), DimensionError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framemul/generators.hpp"
#include "oracles.hpp"

using namespace framemul;
using oracles::close;
using oracles::close_rel;

TEST_CASE("onb generation") {
    GenSpec g;
    g.kind = FamilyKind::onb;
    g.dim = 4;
    const VectorFamily f = generate(g);
    CHECK(f.size() == 4);
    const FrameReport r = classify(f);
    CHECK(close(*r.lower_bound_opt, 1.0, 1e-12));
    CHECK(close(r.bessel_bound_opt, 1.0, 1e-12));

    g.count = 3;  // inconsistent with an ONB of C^4
    CHECK_THROWS_AS(generate(g), ValidationError);
}

TEST_CASE("generation is deterministic per seed") {
    for (FamilyKind kind : {FamilyKind::random_bessel, FamilyKind::random_frame,
                            FamilyKind::riesz_from_matrix, FamilyKind::gabor_irregular}) {
        GenSpec g;
        g.kind = kind;
        g.dim = 4;
        g.seed = 1234;
        g.condition = 3.0;
        g.count = kind == FamilyKind::gabor_irregular ? 8 : 6;
        if (kind == FamilyKind::riesz_from_matrix) g.count = 4;
        const VectorFamily a = generate(g);
        const VectorFamily b = generate(g);
        CHECK(a == b);  // bit-for-bit

        g.seed = 1235;
        CHECK(generate(g) != a);
    }
}

TEST_CASE("harmonic counterexample families are tight") {
    GenSpec g;
    g.kind = FamilyKind::harmonic_counterexample;
    g.dim = 2;
    g.harmonic_p = 2;
    const VectorFamily f = generate(g);
    CHECK(f.size() == 4);
    CHECK(f.labels().size() == 4);
    CHECK(f.labels()[0] == "(1,1)");
    const FrameReport r = classify(f);
    CHECK(close(*r.lower_bound_opt, 1.25, 1e-12));
    CHECK(close(r.bessel_bound_opt, 1.25, 1e-12));

    // partial sums head toward pi^2/6 ~ 1.644934
    GenSpec big = g;
    big.dim = 3;
    big.harmonic_p = 50;
    const FrameReport rb = classify(generate(big));
    const double limit = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(rb.bessel_bound_opt < limit);
    CHECK(limit - rb.bessel_bound_opt < 1.0 / 50.0);
}

TEST_CASE("riesz_from_matrix hits the condition target") {
    GenSpec g;
    g.kind = FamilyKind::riesz_from_matrix;
    g.dim = 5;
    g.seed = 7;
    g.condition = 10.0;
    const FrameReport r = classify(generate(g));
    REQUIRE(r.is_riesz_basis);
    const double ratio = r.bessel_bound_opt / *r.lower_bound_opt;
    CHECK(std::abs(ratio - 100.0) <= 5.0);  // within 5%

    g.condition = 0.5;
    CHECK_THROWS_AS(generate(g), ValidationError);
}

TEST_CASE("regular Gabor families") {
    GenSpec g;
    g.kind = FamilyKind::gabor_regular;
    g.dim = 6;
    g.lattice_a = 1;
    g.lattice_b = 1;
    const VectorFamily full = generate(g);
    CHECK(full.size() == 36);
    // full lattice with a unit-norm window: tight with A = B = n
    const FrameReport r = classify(full);
    CHECK(close_rel(*r.lower_bound_opt, 6.0, 1e-9));
    CHECK(close_rel(r.bessel_bound_opt, 6.0, 1e-9));

    g.lattice_a = 2;
    g.lattice_b = 3;
    const VectorFamily coarse = generate(g);
    CHECK(coarse.size() == 6);

    g.lattice_a = 4;  // does not divide 6
    CHECK_THROWS_AS(generate(g), ValidationError);
}

TEST_CASE("irregular Gabor subsets") {
    GenSpec g;
    g.kind = FamilyKind::gabor_irregular;
    g.dim = 4;
    g.seed = 3;
    g.count = 10;
    const VectorFamily f = generate(g);
    CHECK(f.size() == 10);
    CHECK(classify(f).is_frame);
    CHECK(f.labels().size() == 10);

    // K < n can never be a frame: the retry budget must fail loudly
    g.count = 2;
    try {
        generate(g);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("100") != std::string::npos);
    }
}

TEST_CASE("random frame generator refuses hopeless parameters") {
    GenSpec g;
    g.kind = FamilyKind::random_frame;
    g.dim = 4;
    g.count = 2;
    CHECK_THROWS_AS(generate(g), ValidationError);

    g.count = 8;
    const FrameReport r = classify(generate(g));
    CHECK(r.is_frame);
    CHECK(*r.lower_bound_opt > 1e-6 * r.bessel_bound_opt);
}

TEST_CASE("unbounded symbol fixture") {
    const MultiplierSpec two = unbounded_symbol_fixture(2, 2);
    CHECK(approx_equal(build(two), cx{2, 0} * LinOperator::identity(2), 1e-12));
    CHECK(two.symbol.norm_inf() == 4.0);

    const MultiplierSpec degenerate = unbounded_symbol_fixture(3, 1);
    CHECK(approx_equal(build(degenerate), LinOperator::identity(3), 1e-12));

    // operator norm grows like P while the symbol sup norm grows like P^2
    const MultiplierSpec ten = unbounded_symbol_fixture(2, 10);
    CHECK(close_rel(operator_norm(build(ten)), 10.0, 1e-10));
    CHECK(ten.symbol.norm_inf() == 100.0);
}

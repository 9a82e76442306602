#include "szeta/hyperbolic.hpp"

#include "szeta/fuchsian.hpp"

#include "szeta/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include "doctest.h"
#include "test_support.hpp"

using namespace szeta;
using szeta::test::near;
using szeta::test::Rng;

namespace {

// 2*arccosh(1+sqrt2), the Bolza systole (reference value, 45 digits).
const char* kBolzaLength = "3.0571418389619963225449123695873467865773665924717";

Mat2 rotation(const Real& theta) {
    return {cos(theta), -sin(theta), sin(theta), cos(theta)};
}

Mat2 random_sl2(Rng& rng) {
    // Random a, b, c with d solved from the determinant.
    for (;;) {
        const Real a = rng.real(-3, 3);
        if (abs(a) < Real(1) / 4) continue;
        const Real b = rng.real(-3, 3);
        const Real c = rng.real(-3, 3);
        const Real d = (1 + b * c) / a;
        return {a, b, c, d};
    }
}

}  // namespace

TEST_CASE("classify: hyperbolic, elliptic, identity") {
    Precision::set(40);
    const Real e = exp(Real(1));

    SUBCASE("diag(e, 1/e) is hyperbolic with length 2") {
        GroupElement g({e, Real(0), Real(0), 1 / e}, {});
        const auto c = classify(g);
        REQUIRE(c.kind == ElementClass::Hyperbolic);
        CHECK(near(c.hyperbolic.length, Real(2), pow10(-35)));
        CHECK(c.hyperbolic.m_sign == +1);
        CHECK(near(c.hyperbolic.t, exp(Real(2)), pow10(-33)));
    }

    SUBCASE("rotation by pi/3 is elliptic") {
        const Real pi = boost::math::constants::pi<Real>();
        GroupElement g(rotation(pi / 3), {});
        CHECK(classify(g).kind == ElementClass::Elliptic);
    }

    SUBCASE("plus and minus identity classify as Identity") {
        GroupElement plus(Mat2::identity(), {});
        GroupElement minus(-Mat2::identity(), {});
        CHECK(classify(plus).kind == ElementClass::Identity);
        CHECK(classify(minus).kind == ElementClass::Identity);
    }

    SUBCASE("negative-trace Bolza-style matrix") {
        const Real s = 1 + sqrt(Real(2));
        const Real x = sqrt(2 + 2 * sqrt(Real(2)));
        GroupElement g({-s, -x, -x, -s}, {});
        const auto c = classify(g);
        REQUIRE(c.kind == ElementClass::Hyperbolic);
        CHECK(near(c.hyperbolic.length, Real(kBolzaLength), pow10(-20)));
        CHECK(c.hyperbolic.m_sign == -1);
    }

    SUBCASE("near-parabolic trace raises IndeterminateClass") {
        // trace = 2 + 1e-36, below the classification tolerance 1e-32.
        const Real eps = pow10(-36);
        GroupElement g({1 + eps, Real(1), eps * (2 + eps), 1 + eps}, {});
        CHECK_THROWS_AS(classify(g), IndeterminateClass);
    }

    SUBCASE("non-unimodular matrix is rejected") {
        GroupElement g({Real(2), Real(0), Real(0), Real(2)}, {});
        CHECK_THROWS_AS(classify(g), Error);
    }
}

TEST_CASE("classify is projective: g and -g agree") {
    Precision::set(40);
    Rng rng(7001);
    for (int i = 0; i < 50; ++i) {
        const Mat2 m = random_sl2(rng);
        GroupElement g(m, {});
        GroupElement neg(-m, {});
        Classification a, b;
        try {
            a = classify(g);
        } catch (const IndeterminateClass&) {
            continue;
        }
        b = classify(neg);
        CHECK(a.kind == b.kind);
        if (a.kind == ElementClass::Hyperbolic)
            CHECK(near(a.hyperbolic.length, b.hyperbolic.length, pow10(-30)));
    }
}

TEST_CASE("translation_length basics") {
    Precision::set(40);

    SUBCASE("diag(t^1/2, t^-1/2) with t = e^4 has length 4") {
        const Real th = exp(Real(2));  // t^{1/2}
        GroupElement g({th, Real(0), Real(0), 1 / th}, {});
        CHECK(near(translation_length(g), Real(4), pow10(-34)));
    }

    SUBCASE("elliptic input throws NotHyperbolic") {
        const Real pi = boost::math::constants::pi<Real>();
        GroupElement g(rotation(pi / 5), {});
        CHECK_THROWS_AS(translation_length(g), NotHyperbolic);
    }
}

TEST_CASE("translation length is conjugation invariant (1000 conjugators)") {
    Precision::set(40);
    Rng rng(7002);
    const Real e = exp(Real(1));
    const Mat2 g{e, Real(1) / 2, Real(0), 1 / e};
    const Real len = translation_length(g);
    const Real tol = Precision::classification_tol();
    for (int i = 0; i < 1000; ++i) {
        const Mat2 h = random_sl2(rng);
        const Mat2 conj = h * g * h.inverse_unimodular();
        CHECK(near(translation_length(conj), len, tol));
    }
}

TEST_CASE("power law: length(g^n) = n * length(g)") {
    Precision::set(40);
    const Real s = 1 + sqrt(Real(2));
    const Real x = sqrt(2 + 2 * sqrt(Real(2)));
    const Mat2 g{s, x, x, s};
    const Real len = translation_length(g);
    Mat2 p = g;
    for (int n = 2; n <= 10; ++n) {
        p = p * g;
        CHECK(near(translation_length(p), n * len, pow10(-30)));
    }
}

TEST_CASE("determinant is preserved over 1e4-step product chains") {
    Precision::set(40);
    Rng rng(7003);
    const FuchsianGroup g = bolza_group();

    // Reduced random walk: never step back with the previous letter's inverse,
    // matching the words the enumerator multiplies out.
    Mat2 prod = Mat2::identity();
    std::size_t last = g.alphabet_size();
    for (int i = 0; i < 10000; ++i) {
        std::size_t l;
        do {
            l = static_cast<std::size_t>(rng.integer(0, 7));
        } while (last < g.alphabet_size() && l == g.inverse_letter(last));
        prod = prod * g.letter_matrix(l);
        last = l;
    }
    const Real scale = prod.frobenius_sq();
    CHECK(abs(prod.det() - 1) / (1 + scale) < Precision::classification_tol());
}

TEST_CASE("arccosh matches its defining identity") {
    Precision::set(40);
    Rng rng(7004);
    for (int i = 0; i < 20; ++i) {
        const Real x = rng.real(1.0001, 50);
        CHECK(near(cosh(arccosh(x)), x, pow10(-34) * x));
    }
}

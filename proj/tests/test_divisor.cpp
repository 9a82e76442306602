#include "szeta/divisor.hpp"

#include "szeta/contour.hpp"
#include "szeta/errors.hpp"
#include "szeta/spectral_terms.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace szeta;
using szeta::test::near;

namespace {

Complex cpt(double re, double im = 0) { return Complex(Real(re), Real(im)); }

LaplaceSpectrum constants_only() {
    return LaplaceSpectrum::make({{Real(0), 1}}, Real(10));
}

}  // namespace

TEST_CASE("mu_of_lambda") {
    Precision::set(40);
    CHECK(near(mu_of_lambda(cpt(0.5)), cpt(0), pow10(-38)));
    CHECK(near(mu_of_lambda(cpt(0)), cpt(0.25), pow10(-38)));
    CHECK(near(mu_of_lambda(cpt(1.5)), cpt(-2), pow10(-37)));
}

TEST_CASE("spectral divisor") {
    Precision::set(40);

    SUBCASE("constants give order-1 zeros at +-1/2") {
        const Divisor d = spectral_divisor(constants_only());
        CHECK(d.order_at(cpt(0.5)) == 1);
        CHECK(d.order_at(cpt(-0.5)) == 1);
        CHECK(d.size() == 2);
    }

    SUBCASE("mu = 2 with mult 3 gives order-3 zeros at +-i*sqrt(7)/2") {
        const Divisor d = spectral_divisor(
            LaplaceSpectrum::make({{Real(0), 1}, {Real(2), 3}}, Real(10)));
        const Real root = sqrt(Real(7)) / 2;
        CHECK(d.order_at(Complex(Real(0), root)) == 3);
        CHECK(d.order_at(Complex(Real(0), -root)) == 3);
    }

    SUBCASE("mu = 1/4 gives a single order-2m zero at 0") {
        const Divisor d = spectral_divisor(
            LaplaceSpectrum::make({{Real(0), 1}, {Real(1) / 4, 5}}, Real(10)));
        CHECK(d.order_at(cpt(0)) == 10);
    }

    SUBCASE("small eigenvalue 0 < mu < 1/4 gives real zeros in (-1/2, 1/2)") {
        const Divisor d = spectral_divisor(
            LaplaceSpectrum::make({{Real(0), 1}, {Real("0.21"), 2}}, Real(10)));
        const Real root = sqrt(Real(1) / 4 - Real("0.21"));
        CHECK(d.order_at(Complex(root, Real(0))) == 2);
        CHECK(d.order_at(Complex(-root, Real(0))) == 2);
        CHECK(root < Real(1) / 2);
    }

    SUBCASE("reflection symmetry") {
        const Divisor d = spectral_divisor(
            LaplaceSpectrum::make({{Real(0), 1}, {Real("0.1"), 2}, {Real(3), 4}}, Real(10)));
        for (const auto& [p, ord] : d.points()) CHECK(d.order_at(-p) == ord);
    }
}

TEST_CASE("trivial divisor") {
    Precision::set(40);
    const Divisor d2 = trivial_divisor(2, Real(6));
    CHECK(d2.order_at(cpt(-2.5)) == 10);   // n = 2: (2g-2)(2n+1) = 2*5
    CHECK(d2.order_at(cpt(-0.5)) == 2);    // n = 0
    CHECK(d2.order_at(cpt(-1.5)) == 6);    // n = 1
    CHECK(d2.order_at(cpt(0.5)) == 0);     // supported strictly on lambda < 0
    CHECK(d2.order_at(cpt(-1.0)) == 0);

    const Divisor d3 = trivial_divisor(3, Real(2));
    CHECK(d3.order_at(cpt(-1.5)) == 12);   // g = 3, n = 1

    CHECK_THROWS_AS(trivial_divisor(1, Real(2)), Error);
}

TEST_CASE("full divisor combines both parts") {
    Precision::set(40);
    const Divisor d = full_divisor(2, constants_only(), Real(4));
    CHECK(d.order_at(cpt(-0.5)) == 3);  // (2g-2) + 1
    CHECK(d.order_at(cpt(0.5)) == 1);
    CHECK(d.order_at(cpt(1.5)) == 0);
    for (const auto& [p, ord] : d.points()) CHECK(ord > 0);  // zero-free of poles
}

TEST_CASE("volume ratio is an exact integer") {
    CHECK(volume_ratio(2) == 1);
    CHECK(volume_ratio(5) == 4);
    // Coefficient of the dual trace term: (2g-2)/2 = g-1 = vol ratio.
    for (int g = 2; g <= 10; ++g) CHECK(volume_ratio(g) == (2 * g - 2) / 2);
}

TEST_CASE("laplace spectrum validation") {
    Precision::set(40);
    CHECK_THROWS_AS(LaplaceSpectrum::make({{Real(1), 1}}, Real(10)), Error);  // no (0,1)
    CHECK_THROWS_AS(LaplaceSpectrum::make({{Real(0), 2}}, Real(10)), Error);  // mult != 1
    CHECK_THROWS_AS(
        LaplaceSpectrum::make({{Real(0), 1}, {Real(20), 1}}, Real(10)), Error);
}

TEST_CASE("divisor orders equal contour residues of the model log-derivative") {
    Precision::set(40);
    const auto spec = LaplaceSpectrum::make(
        {{Real(0), 1}, {Real("0.21"), 2}, {Real(2), 3}}, Real(10));
    const int genus = 2;
    const Divisor div = full_divisor(genus, spec, Real(4));
    const IdentityTermModel model{genus, Real(0), Real(0)};
    auto f = [&](const Complex& z) { return log_derivative_model(model, spec, z); };

    for (const auto& [p, ord] : div.points()) {
        const Complex integral = contour_integral(p, Real(1) / 8, f, 96);
        CHECK(near(integral, Complex(Real(ord), Real(0)), pow10(-8)));
    }
}

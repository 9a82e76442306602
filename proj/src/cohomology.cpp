#include "szeta/cohomology.hpp"

#include "szeta/errors.hpp"

#include <cmath>

namespace szeta {

namespace {

std::string lattice_label(Regime regime, int n) {
    switch (regime) {
        case Regime::PlusHalf: return "1/2";
        case Regime::NegHalf: return "-1/2";
        case Regime::PosHalfInteger: return std::to_string(2 * n + 1) + "/2";
        case Regime::NegHalfInteger: return "-" + std::to_string(2 * n + 1) + "/2";
        default: return "generic";
    }
}

void require_genus(int genus) {
    if (genus < 2) throw Error("cohomology: genus must be >= 2");
}

}  // namespace

ParamPoint classify_lambda(const Complex& lambda) {
    const Real tol = Precision::dedup_tol();
    ParamPoint p{lambda, Regime::Generic, 0};
    if (abs(imag(lambda)) > tol) return p;

    const Real x = real(lambda);
    // Nearest half-odd-integer (2k+1)/2 with k possibly negative.
    const Real doubled = 2 * x;
    const long rounded = std::lround(static_cast<double>(doubled));
    if ((rounded % 2 != 0) && abs(doubled - rounded) < tol) {
        const long k = (rounded > 0 ? rounded : -rounded) / 2;  // lambda = +-(2k+1)/2
        if (rounded > 0) {
            p.regime = (k == 0) ? Regime::PlusHalf : Regime::PosHalfInteger;
        } else {
            p.regime = (k == 0) ? Regime::NegHalf : Regime::NegHalfInteger;
        }
        p.n = static_cast<int>(k);
    }
    return p;
}

CohomologyTable dims_hyperfunction(int genus, const Complex& lambda,
                                   const LaplaceSpectrum& spec) {
    require_genus(genus);
    const Real tol = Precision::dedup_tol();
    if (abs(lambda) < tol)
        throw UnsupportedLambda("dims_hyperfunction: lambda = 0 is excluded");

    const ParamPoint p = classify_lambda(lambda);
    CohomologyTable t{CoefficientModule::Hyperfunction, genus, lattice_label(p.regime, p.n),
                      0, 0, 0};
    const long g = genus;
    switch (p.regime) {
        case Regime::PosHalfInteger:
            t.h0 = t.h1 = t.h2 = 0;
            return t;
        case Regime::PlusHalf:
            t.h0 = 1;
            t.h1 = 1;
            t.h2 = 0;
            return t;
        case Regime::NegHalf:
            t.h0 = 2 * g;
            t.h1 = 2 * g + 1;
            t.h2 = 1;
            return t;
        case Regime::NegHalfInteger: {
            const long d = (2L * p.n + 1) * (2 * g - 2);
            t.h0 = d;
            t.h1 = d;
            t.h2 = 0;
            return t;
        }
        case Regime::Generic:
            break;
    }

    // Generic regime: ker and coker of the elliptic operator Delta_Y - mu(lambda)
    // have equal dimension (index 0), the multiplicity of mu(lambda) as an
    // eigenvalue. Non-real or negative mu can never be an eigenvalue.
    const Complex mu = mu_of_lambda(lambda);
    long m = 0;
    if (abs(imag(mu)) < tol && real(mu) > -tol) {
        if (real(mu) >= spec.complete_below - tol)
            throw UnknownSpectralRegion(
                "dims_hyperfunction: mu(lambda) lies beyond the spectrum cutoff");
        m = spec.multiplicity_of(real(mu));
    }
    t.h0 = m;
    t.h1 = m;
    t.h2 = 0;
    return t;
}

CohomologyTable dims_finite(int genus, int n) {
    require_genus(genus);
    if (n < 0) throw Error("dims_finite: n must be >= 0");
    const long g = genus;
    CohomologyTable t{CoefficientModule::FiniteDim, genus, "F_" + std::to_string(2 * n + 1),
                      0, 0, 0};
    if (n == 0) {
        t.h0 = 1;
        t.h1 = 2 * g;
        t.h2 = 1;
    } else {
        t.h0 = 0;
        t.h1 = (2 * g - 2) * (2L * n + 1);
        t.h2 = 0;
    }
    return t;
}

CohomologyTable dims_discrete(int genus, int n, DiscreteSide /*side*/) {
    require_genus(genus);
    if (n < 0) throw Error("dims_discrete: n must be >= 0");
    const long g = genus;
    CohomologyTable t{CoefficientModule::DiscreteSeries, genus,
                      "D_" + std::to_string(2 * n + 1), 0, 0, 0};
    if (n == 0) {
        t.h0 = 2 * g;
        t.h1 = 2;  // sum of two conjugate isomorphic submodules, hence even
        t.h2 = 0;
    } else {
        t.h0 = (2 * g - 2) * (2L * n + 1);
        t.h1 = 0;
        t.h2 = 0;
    }
    return t;
}

long chi_prime(const CohomologyTable& table) { return table.chi_prime(); }

bool check_les(int genus, int n, Regime regime) {
    require_genus(genus);
    CohomologyTable v{CoefficientModule::Hyperfunction, genus, "", 0, 0, 0};
    const long g = genus;
    int n_eff = n;
    switch (regime) {
        case Regime::PosHalfInteger:
            v = {CoefficientModule::Hyperfunction, genus, "", 0, 0, 0};
            break;
        case Regime::PlusHalf:
            v = {CoefficientModule::Hyperfunction, genus, "", 1, 1, 0};
            n_eff = 0;
            break;
        case Regime::NegHalf:
            v = {CoefficientModule::Hyperfunction, genus, "", 2 * g, 2 * g + 1, 1};
            n_eff = 0;
            break;
        case Regime::NegHalfInteger: {
            const long d = (2L * n + 1) * (2 * g - 2);
            v = {CoefficientModule::Hyperfunction, genus, "", d, d, 0};
            break;
        }
        case Regime::Generic:
            throw Error("check_les: regime must be one of the four lattice regimes");
    }
    const bool positive_side =
        regime == Regime::PosHalfInteger || regime == Regime::PlusHalf;
    const CohomologyTable f = dims_finite(genus, n_eff);
    const CohomologyTable d = dims_discrete(
        genus, n_eff, positive_side ? DiscreteSide::PosLambda : DiscreteSide::NegLambda);

    // 0 -> A -> V -> B -> 0 with (A,B) = (F,D) on the positive side and (D,F)
    // on the negative one; the long exact sequence alternates A, V, B in each
    // degree, so the signed sum of all nine dims vanishes iff it is exact.
    const CohomologyTable& a = positive_side ? f : d;
    const CohomologyTable& b = positive_side ? d : f;
    const long alternating = (a.h0 - v.h0 + b.h0) - (a.h1 - v.h1 + b.h1) +
                             (a.h2 - v.h2 + b.h2);
    return alternating == 0;
}

PattersonReport check_patterson(int genus, const Complex& lambda,
                                const LaplaceSpectrum& spec) {
    require_genus(genus);
    const Real tol = Precision::dedup_tol();
    if (abs(lambda) < tol)
        throw UnsupportedLambda("check_patterson: lambda = 0 is excluded");

    const Real bound = abs(lambda) + 1;
    const Divisor div = full_divisor(genus, spec, bound);
    const long order = div.order_at(lambda);
    const long mcp = -chi_prime(dims_hyperfunction(genus, lambda, spec));
    return {order == mcp, order, mcp};
}

}  // namespace szeta

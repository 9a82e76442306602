#pragma once

#include "szeta/divisor.hpp"
#include "szeta/numeric.hpp"

#include <string>

namespace szeta {

/// Position of lambda relative to the reducibility lattice {+-(2n+1)/2}.
enum class Regime {
    Generic,          // lambda not in +-(1/2 + N0)
    PosHalfInteger,   // lambda = n + 1/2, n >= 1
    PlusHalf,         // lambda = 1/2
    NegHalf,          // lambda = -1/2
    NegHalfInteger,   // lambda = -(2n+1)/2, n >= 1
};

struct ParamPoint {
    Complex lambda;
    Regime regime;
    int n;  // lattice index for the half-integer regimes (0 at +-1/2), else 0
};

/// Exact classification of lambda against the lattice at tolerance.
ParamPoint classify_lambda(const Complex& lambda);

enum class CoefficientModule { Hyperfunction, FiniteDim, DiscreteSeries };

/// Dimensions of H^0, H^1, H^2 of the surface group with coefficients in one
/// of the three module families. chi and chi' are always derived, never stored.
struct CohomologyTable {
    CoefficientModule coefficient_module;
    int genus;
    std::string label;  // rendering hint for table output ("-1/2", "F_3", ...)
    long h0, h1, h2;

    long chi() const { return h0 - h1 + h2; }
    long chi_prime() const { return -h1 + 2 * h2; }
};

/// dim H^i(Gamma, V^{-omega}) at parameter lambda, genus g. The Laplace
/// spectrum feeds the generic and +-1/2 regimes. Throws UnsupportedLambda at
/// lambda = 0 and UnknownSpectralRegion when mu(lambda) is a possible
/// eigenvalue beyond the declared completeness cutoff.
CohomologyTable dims_hyperfunction(int genus, const Complex& lambda, const LaplaceSpectrum& spec);

/// dim H^i(Gamma, F_{2n+1}) for the (2n+1)-dimensional irreducible module.
CohomologyTable dims_finite(int genus, int n);

enum class DiscreteSide { PosLambda, NegLambda };

/// dim H^i(Gamma, D_{2n+1}^{-omega}) for the discrete-series quotient at the
/// positive lattice point, or the submodule at the negative one. The two
/// sides carry identical dimension tables.
CohomologyTable dims_discrete(int genus, int n, DiscreteSide side);

long chi_prime(const CohomologyTable& table);

/// Long-exact-sequence bookkeeping: the alternating sum of all nine dims
/// around 0 -> F -> V -> D -> 0 (positive lattice) or 0 -> D -> V -> F -> 0
/// (negative lattice) must vanish. `regime` must be one of the four special
/// regimes; n is ignored for the +-1/2 regimes.
bool check_les(int genus, int n, Regime regime);

struct PattersonReport {
    bool ok;
    long divisor_order;
    long minus_chi_prime;
};

/// ord_lambda Z(Gamma,1,.) from the divisor pipeline vs -chi' from the
/// cohomology pipeline, same spectrum on both sides. lambda must be nonzero.
PattersonReport check_patterson(int genus, const Complex& lambda, const LaplaceSpectrum& spec);

}  // namespace szeta

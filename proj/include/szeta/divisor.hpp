#pragma once

#include "szeta/numeric.hpp"

#include <utility>
#include <vector>

namespace szeta {

/// Finite list of Laplace eigenvalues of the quotient surface, declared
/// complete below the cutoff. Connected surfaces must list (0, 1) first.
struct LaplaceSpectrum {
    struct Entry {
        Real mu;
        long mult;
    };

    std::vector<Entry> entries;  // ascending, distinct at tolerance
    Real complete_below;

    /// Validates ordering, positivity, and the mandatory (0,1) head entry.
    static LaplaceSpectrum make(std::vector<Entry> entries, Real complete_below);

    /// Multiplicity of mu in the list, 0 when absent. Pure lookup; the
    /// completeness guard lives with the callers that need it.
    long multiplicity_of(const Real& mu) const;
};

/// Finite map from points of the lambda plane to nonzero integer orders
/// (zeros positive). Points are merged at the dedup tolerance.
class Divisor {
public:
    void add(const Complex& lambda, long order);
    long order_at(const Complex& lambda) const;

    /// Points sorted by (Re, Im); deterministic.
    std::vector<std::pair<Complex, long>> points() const;
    std::size_t size() const { return points_.size(); }

    Divisor& operator+=(const Divisor& other);

private:
    std::vector<std::pair<Complex, long>> points_;
};

/// Casimir eigenvalue of the principal series at parameter lambda: 1/4 - lambda^2.
Complex mu_of_lambda(const Complex& lambda);

/// Zeros forced by the Laplace spectrum: for each (mu, m) a zero of order m at
/// both square roots of 1/4 - mu, except mu = 1/4 which gives one zero of
/// order 2m at lambda = 0.
Divisor spectral_divisor(const LaplaceSpectrum& spec);

/// Topological zeros at lambda = -(2n+1)/2 of order (2g-2)(2n+1), emitted for
/// all n with (2n+1)/2 <= lambda_bound.
Divisor trivial_divisor(int genus, const Real& lambda_bound);

/// Pointwise sum of the spectral and trivial divisors, restricted to
/// |lambda| <= lambda_bound.
Divisor full_divisor(int genus, const LaplaceSpectrum& spec, const Real& lambda_bound);

/// vol(Y)/vol(S^2) = g - 1, exact.
long volume_ratio(int genus);

}  // namespace szeta

#pragma once

#include "szeta/divisor.hpp"
#include "szeta/numeric.hpp"
#include "szeta/sigma.hpp"

#include <functional>
#include <vector>

namespace szeta {

/// Half-integer invariants of sigma governing the tan/cot dichotomy.
/// eps_sigma = |rho| + eps_alpha mod 1, with both values in {0, 1/2}.
struct EpsilonData {
    Real eps_alpha;
    Real eps_sigma;
};

/// Derives eps_alpha from a live evaluation of sigma(exp(2*pi*i*H_alpha))
/// (the exponential is computed numerically and lands on -I), then eps_sigma
/// from the mod-1 relation with |rho| = 1/2.
EpsilonData epsilon_of(const SigmaParam& sigma);

/// rho(H_alpha) computed from the bracket action on the nilpotent algebra.
Real iwasawa_rho();

/// pi*tan(pi*lambda) when eps_sigma = 1/2, -pi*cot(pi*lambda) when 0.
/// Throws PoleHit on the corresponding pole lattice.
Complex trig_term(const EpsilonData& eps, const Complex& lambda);

/// Regularized partial sum of the dual (sphere) resolvent trace:
///   sum_{n=0}^{N} [ (2n+1)/((n+1/2)^2 - lambda^2) - 2/(n+1) ].
/// The counterterm makes the tail O(1/n^2). Throws PoleHit at +-(n+1/2) for
/// retained n.
Complex dual_trace_partial(const Complex& lambda, unsigned N);

/// Model of the identity/topological side of the trace formula for sigma = 1.
/// The testable contract: meromorphic with simple poles exactly at
/// lambda = -(2n+1)/2 of residue (2g-2)(2n+1), holomorphic on the positive
/// lattice, regular at 0. c0, c1 absorb the affine ambiguity of the
/// regularization and do not move any pole or residue.
struct IdentityTermModel {
    int genus;
    Real c0;
    Real c1;
};

/// Id(lambda) = (g-1) * 2*lambda * [trig_term(lambda) - dual_trace(lambda)]
///            + c0 + c1*lambda,
/// where dual_trace is the partial sum at an automatic N completed by its
/// analytic (pole-free) digamma tail. Equals (2g-2)*2*lambda*psi(lambda+1/2)
/// up to an affine function. Throws PoleHit on the negative lattice;
/// removable points on the positive lattice are evaluated by a small-circle
/// mean.
Complex identity_term(const IdentityTermModel& model, const Complex& lambda);

/// Identity term plus the eigenvalue pole terms 2*lambda*m/(lambda^2 - 1/4 + mu)
/// of the given surface spectrum: the model log-derivative whose residues are
/// the divisor orders.
Complex log_derivative_model(const IdentityTermModel& model, const LaplaceSpectrum& spec,
                             const Complex& lambda);

struct CalibrationResult {
    Real c0;
    Real c1;
    Real residual;  // rms misfit over the samples, reported not asserted
};

/// Least-squares fit of (c0, c1) so that c0 + c1*lambda matches
/// geodesic_log_derivative(lambda) - 2*lambda/(lambda^2 - 1/4) - Id0(lambda)
/// over the samples, where Id0 is the model with c0 = c1 = 0 and the
/// subtracted term is the dominant (mu = 0) eigenvalue contribution.
/// Throws InsufficientSamples for fewer than two distinct samples.
CalibrationResult calibrate(int genus,
                            const std::function<Complex(const Complex&)>& geodesic_log_derivative,
                            const std::vector<Complex>& samples);

}  // namespace szeta

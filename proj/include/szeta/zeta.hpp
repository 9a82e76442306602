#pragma once

#include "szeta/fuchsian.hpp"
#include "szeta/numeric.hpp"
#include "szeta/sigma.hpp"

#include <vector>

namespace szeta {

struct LocalFactorResult {
    Complex value;
    Real tail_bound;  // bound on |log| of the omitted k > K tail
};

/// Local factor of one hyperbolic class in the SL(2,R) normalization:
///   prod_{k=0}^{K} (1 - eps * t^{-lambda-k-1/2}),  eps = sigma(m_g).
/// t = e^l > 1. The Ad-action of M on the restricted root space is trivial,
/// so eps does not depend on k. Throws DivergentTail when the tail bound
/// exceeds 1e-3 and requires Re(lambda) > -K.
LocalFactorResult local_factor_sl2(const Real& t, int m_sign, const SigmaParam& sigma,
                                   const Complex& lambda, unsigned K);

/// Data of a general rank-one local factor: the value of sigma on m_g, the
/// scalar a_g^rho > 1, and the eigenvalues of Ad(m_g a_g) on the opposite
/// nilpotent algebra (all of modulus < 1).
struct GeneralLocalFactorInput {
    std::vector<std::vector<Complex>> sigma_matrix;
    Real a_rho;
    std::vector<Complex> ad_eigenvalues;
};

/// Truncated product over k <= K of det(1 - s_k sigma(m) (x) S^k(Ad)), with
/// the scalar shift fixed to a^{-(lambda+rho)} by the requirement that the
/// SL(2,R) specialization reproduce local_factor_sl2 exactly. S^k is realized
/// as the multiset of degree-k monomials in the Ad eigenvalues.
LocalFactorResult local_factor_general(const GeneralLocalFactorInput& in,
                                       const Complex& lambda, const Real& rho_value,
                                       unsigned K);

struct ZetaResult {
    Complex value;
    Real truncation_err;  // accumulated local-factor tail bounds (a bound)
    Real tail_estimate;   // geodesics beyond L_max, prime-geodesic heuristic
};

/// log Z as the sum of local-factor logs over the spectrum (with
/// multiplicity). Convergence region Re(lambda) > 1/2; throws
/// OutsideConvergence at or below the line.
Complex log_zeta(const LengthSpectrum& spec, const SigmaParam& sigma,
                 const Complex& lambda, unsigned K);

/// The truncated Selberg zeta product with error reporting.
ZetaResult zeta(const LengthSpectrum& spec, const SigmaParam& sigma,
                const Complex& lambda, unsigned K);

/// Geodesic Dirichlet series for Z'/Z, truncated consistently with zeta at
/// the same K:
///   sum_gamma sum_{m>=1} mult * l * eps^m * e^{-m*l*(lambda+1/2)}
///                        * (1 - e^{-m*l*(K+1)}) / (1 - e^{-m*l}).
Complex log_derivative(const LengthSpectrum& spec, const SigmaParam& sigma,
                       const Complex& lambda, unsigned K);

}  // namespace szeta

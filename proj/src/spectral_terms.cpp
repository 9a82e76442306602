#include "szeta/spectral_terms.hpp"

#include "szeta/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace szeta {

namespace {

Real pi_const() { return boost::math::constants::pi<Real>(); }

/// Distance from x to the nearest point of s + Z.
Real lattice_distance(const Real& x, const Real& shift) {
    const Real y = x - shift;
    const long k = std::lround(static_cast<double>(y));
    return abs(y - k);
}

Complex tan_term_unguarded(const Complex& lambda) {
    const Real pi = pi_const();
    return Complex(pi, Real(0)) * tan(Complex(pi, Real(0)) * lambda);
}

Complex cot_term_unguarded(const Complex& lambda) {
    const Real pi = pi_const();
    const Complex z = Complex(pi, Real(0)) * lambda;
    return Complex(-pi, Real(0)) * cos(z) / sin(z);
}

Complex dual_trace_unguarded(const Complex& lambda, unsigned N) {
    const Complex lambda_sq = lambda * lambda;
    Complex acc(Real(0), Real(0));
    for (unsigned n = 0; n <= N; ++n) {
        const Real half = Real(2 * n + 1) / 2;
        acc += Complex(Real(2 * n + 1), Real(0)) / (Complex(half * half, Real(0)) - lambda_sq);
        acc -= Complex(Real(2) / (n + 1), Real(0));
    }
    return acc;
}

unsigned auto_terms(const Complex& lambda) {
    const double mag = static_cast<double>(abs(lambda));
    return 256 + static_cast<unsigned>(4 * mag);
}

/// Asymptotic digamma, valid far to the right of the imaginary axis.
Complex psi_asymptotic(const Complex& z) {
    const Complex inv = Complex(Real(1), Real(0)) / z;
    const Complex inv2 = inv * inv;
    return log(z) - inv / Complex(Real(2), Real(0)) -
           inv2 * (Complex(Real(1) / 12, Real(0)) -
                   inv2 * (Complex(Real(1) / 120, Real(0)) -
                           inv2 * Complex(Real(1) / 252, Real(0))));
}

/// Analytic completion of the truncated dual trace: sum over n > N of the
/// regularized terms, via the digamma asymptotics. Pole-free for |lambda| << N,
/// so adding it moves no pole and no residue; it removes the O(1/N) truncation
/// bias and keeps the integrand analytic when N steps with |lambda|.
Complex dual_trace_tail(const Complex& lambda, unsigned N) {
    const Complex shift(Real(2 * N + 3) / 2, Real(0));
    const Complex at_counter(Real(N + 2), Real(0));
    return Complex(Real(2), Real(0)) * psi_asymptotic(at_counter) -
           psi_asymptotic(shift - lambda) - psi_asymptotic(shift + lambda);
}

Complex identity_core(int genus, const Complex& lambda, unsigned N) {
    const Complex two_lambda = Complex(Real(2), Real(0)) * lambda;
    const Complex dual =
        dual_trace_unguarded(lambda, N) + dual_trace_tail(lambda, N);
    return Complex(Real(genus - 1), Real(0)) * two_lambda *
           (tan_term_unguarded(lambda) - dual);
}

}  // namespace

Real iwasawa_rho() {
    // H_alpha = diag(1/2, -1/2); [H_alpha, X] for the upper nilpotent X gives
    // ad(H)|_n = 1, so rho = (1/2) tr ad(H)|_n = 1/2. Computed by the actual
    // bracket rather than hard-coded.
    const Real h = Real(1) / 2;
    // X = [[0,1],[0,0]]; [H,X] = HX - XH has (1,2) entry h - (-h) = 2h.
    const Real ad_eigenvalue = h - (-h);
    return ad_eigenvalue / 2;
}

EpsilonData epsilon_of(const SigmaParam& sigma) {
    const Real pi = pi_const();
    // exp(2*pi*i*H_alpha) = diag(e^{i*pi}, e^{-i*pi}), evaluated numerically.
    const Complex e_plus(cos(pi), sin(pi));
    const Complex e_minus(cos(pi), -sin(pi));
    const Real tol = Precision::near_tol();
    if (abs(e_plus - Complex(Real(-1), Real(0))) > tol ||
        abs(e_minus - Complex(Real(-1), Real(0))) > tol)
        throw Error("epsilon_of: exp(2*pi*i*H_alpha) did not evaluate to -I");

    // sigma(-I) = e^{2*pi*i*eps_alpha} with eps_alpha in {0, 1/2}.
    const int value_on_exp = sigma(-1);
    EpsilonData eps;
    eps.eps_alpha = value_on_exp > 0 ? Real(0) : Real(1) / 2;
    // eps_sigma = |rho| + eps_alpha mod 1, reduced into {0, 1/2}.
    Real s = iwasawa_rho() + eps.eps_alpha;
    if (s >= 1) s -= 1;
    eps.eps_sigma = s;
    return eps;
}

Complex trig_term(const EpsilonData& eps, const Complex& lambda) {
    const Real tol = Precision::near_tol();
    const bool tan_case = eps.eps_sigma == Real(1) / 2;
    if (abs(imag(lambda)) < tol) {
        const Real shift = tan_case ? Real(1) / 2 : Real(0);
        if (lattice_distance(real(lambda), shift) < tol)
            throw PoleHit("trig_term: lambda on the pole lattice");
    }
    return tan_case ? tan_term_unguarded(lambda) : cot_term_unguarded(lambda);
}

Complex dual_trace_partial(const Complex& lambda, unsigned N) {
    const Real tol = Precision::near_tol();
    if (abs(imag(lambda)) < tol) {
        const Real x = abs(real(lambda));
        if (x <= Real(N) + 1 && lattice_distance(x, Real(1) / 2) < tol)
            throw PoleHit("dual_trace_partial: lambda at a retained pole");
    }
    return dual_trace_unguarded(lambda, N);
}

Complex identity_term(const IdentityTermModel& model, const Complex& lambda) {
    if (model.genus < 2) throw Error("identity_term: genus must be >= 2");
    const Real tol = Precision::near_tol();
    const unsigned N = auto_terms(lambda);
    const Complex affine = Complex(model.c0, Real(0)) + Complex(model.c1, Real(0)) * lambda;

    if (abs(imag(lambda)) < tol && lattice_distance(real(lambda), Real(1) / 2) < tol) {
        if (real(lambda) < 0)
            throw PoleHit("identity_term: lambda on the negative pole lattice");
        // Positive lattice points are removable singularities of the formula:
        // take the mean over a small circle (exact for analytic functions).
        const Real h = pow10(-static_cast<int>(Precision::digits()) / 3);
        Complex acc(Real(0), Real(0));
        const Complex offsets[4] = {Complex(h, Real(0)), Complex(-h, Real(0)),
                                    Complex(Real(0), h), Complex(Real(0), -h)};
        for (const Complex& o : offsets) acc += identity_core(model.genus, lambda + o, N);
        return acc / Complex(Real(4), Real(0)) + affine;
    }
    return identity_core(model.genus, lambda, N) + affine;
}

Complex log_derivative_model(const IdentityTermModel& model, const LaplaceSpectrum& spec,
                             const Complex& lambda) {
    Complex acc = identity_term(model, lambda);
    const Complex lambda_sq = lambda * lambda;
    for (const auto& e : spec.entries) {
        const Complex denom = lambda_sq - Complex(Real(1) / 4 - e.mu, Real(0));
        acc += Complex(Real(2 * e.mult), Real(0)) * lambda / denom;
    }
    return acc;
}

CalibrationResult calibrate(int genus,
                            const std::function<Complex(const Complex&)>& geodesic_log_derivative,
                            const std::vector<Complex>& samples) {
    if (samples.size() < 2)
        throw InsufficientSamples("calibrate: need at least two sample points");

    const IdentityTermModel base{genus, Real(0), Real(0)};
    // Real 2x2 normal equations for min \sum |c0 + c1*lambda - r|^2 over real
    // unknowns, treating real and imaginary parts as separate equations.
    Real a11(0), a12(0), a22(0), b1(0), b2(0);
    std::vector<Complex> residues(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const Complex& lam = samples[j];
        const Complex dominant =
            Complex(Real(2), Real(0)) * lam /
            (lam * lam - Complex(Real(1) / 4, Real(0)));
        const Complex r = geodesic_log_derivative(lam) - dominant - identity_term(base, lam);
        residues[j] = r;
        // Row [1, Re lam | Re r] and row [0, Im lam | Im r].
        a11 += 1;
        a12 += real(lam);
        a22 += real(lam) * real(lam) + imag(lam) * imag(lam);
        b1 += real(r);
        b2 += real(lam) * real(r) + imag(lam) * imag(r);
    }
    const Real det = a11 * a22 - a12 * a12;
    if (abs(det) < Precision::near_tol())
        throw InsufficientSamples("calibrate: sample points are degenerate");
    CalibrationResult out;
    out.c0 = (a22 * b1 - a12 * b2) / det;
    out.c1 = (a11 * b2 - a12 * b1) / det;

    Real ss(0);
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const Complex fit = Complex(out.c0, Real(0)) + Complex(out.c1, Real(0)) * samples[j];
        ss += norm(fit - residues[j]);
    }
    out.residual = sqrt(ss / samples.size());
    return out;
}

}  // namespace szeta

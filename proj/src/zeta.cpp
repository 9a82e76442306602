#include "szeta/zeta.hpp"

#include "szeta/errors.hpp"

#include <cmath>

namespace szeta {

namespace {

constexpr double kTailCap = 1e-3;

void check_convergence(const Complex& lambda) {
    if (!(real(lambda) > Real(1) / 2 + Precision::near_tol()))
        throw OutsideConvergence("zeta: Re(lambda) must exceed 1/2");
}

Complex cpow(const Real& base, const Complex& exponent) {
    return exp(exponent * Complex(log(base), Real(0)));
}

/// det(I - z) for a small dense complex matrix z, by Gaussian elimination.
Complex det_one_minus(std::vector<std::vector<Complex>> z) {
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            z[i][j] = (i == j ? Complex(Real(1), Real(0)) : Complex(Real(0), Real(0))) - z[i][j];

    Complex det(Real(1), Real(0));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (abs(z[row][col]) > abs(z[pivot][col])) pivot = row;
        if (pivot != col) {
            std::swap(z[pivot], z[col]);
            det = -det;
        }
        if (abs(z[col][col]) == 0) return Complex(Real(0), Real(0));
        det *= z[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const Complex f = z[row][col] / z[col][col];
            for (std::size_t j = col; j < n; ++j) z[row][j] -= f * z[col][j];
        }
    }
    return det;
}

/// Degree-k monomials in the given eigenvalues (the S^k eigenvalue multiset).
void symmetric_power_monomials(const std::vector<Complex>& eigs, unsigned k,
                               std::size_t from, const Complex& acc,
                               std::vector<Complex>& out) {
    if (k == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i < eigs.size(); ++i)
        symmetric_power_monomials(eigs, k - 1, i, acc * eigs[i], out);
}

}  // namespace

LocalFactorResult local_factor_sl2(const Real& t, int m_sign, const SigmaParam& sigma,
                                   const Complex& lambda, unsigned K) {
    if (!(t > 1)) throw Error("local_factor_sl2: t must exceed 1");
    if (!(real(lambda) > -Real(static_cast<int>(K))))
        throw DivergentTail("local_factor_sl2: Re(lambda) <= -K");

    const int eps = sigma(m_sign);
    Complex value(Real(1), Real(0));
    for (unsigned k = 0; k <= K; ++k) {
        const Complex term =
            cpow(t, -(lambda + Complex(Real(2 * k + 1) / 2, Real(0))));
        value *= Complex(Real(1), Real(0)) - Complex(Real(eps), Real(0)) * term;
    }

    LocalFactorResult out;
    out.value = value;
    out.tail_bound =
        2 * pow(t, -(real(lambda) + Real(K) + Real(3) / 2)) / (1 - 1 / t);
    if (out.tail_bound > kTailCap)
        throw DivergentTail("local_factor_sl2: truncation tail above 1e-3");
    return out;
}

LocalFactorResult local_factor_general(const GeneralLocalFactorInput& in,
                                       const Complex& lambda, const Real& rho_value,
                                       unsigned K) {
    if (!(in.a_rho > 1)) throw Error("local_factor_general: a_rho must exceed 1");
    if (!(rho_value > 0)) throw Error("local_factor_general: rho must be positive");
    const std::size_t n = in.sigma_matrix.size();
    for (const auto& row : in.sigma_matrix)
        if (row.size() != n) throw Error("local_factor_general: sigma matrix not square");
    Real q(0);
    for (const Complex& e : in.ad_eigenvalues) {
        const Real m = abs(e);
        if (!(m < 1))
            throw Error("local_factor_general: |Ad eigenvalue| must be < 1");
        if (m > q) q = m;
    }

    // a^{-(lambda+rho)} = a_rho^{-(lambda+rho)/rho}; calibrated so the
    // SL(2,R) data (sigma = 1, a_rho = t^{1/2}, ad = {1/t}) gives t^{-lambda-1/2}.
    const Complex scale =
        exp(-(lambda + Complex(rho_value, Real(0))) *
            Complex(log(in.a_rho) / rho_value, Real(0)));

    Complex value(Real(1), Real(0));
    std::vector<Complex> monomials;
    for (unsigned k = 0; k <= K; ++k) {
        monomials.clear();
        symmetric_power_monomials(in.ad_eigenvalues, k, 0, Complex(Real(1), Real(0)),
                                  monomials);
        for (const Complex& mu : monomials) {
            std::vector<std::vector<Complex>> block(n, std::vector<Complex>(n));
            const Complex s = scale * mu;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) block[i][j] = s * in.sigma_matrix[i][j];
            value *= det_one_minus(std::move(block));
        }
    }

    // Tail bound: |log| of omitted factors <= 2 n |sigma|_max |scale| *
    // sum_{k>K} dim(S^k) q^k with dim(S^k) <= (k+1)^(d-1).
    Real sigma_max(0);
    for (const auto& row : in.sigma_matrix)
        for (const Complex& v : row)
            if (abs(v) > sigma_max) sigma_max = abs(v);
    const std::size_t d = in.ad_eigenvalues.size();
    Real tail(0);
    Real qk = pow(q, static_cast<int>(K) + 1);
    for (unsigned k = K + 1; k <= K + 400; ++k) {
        tail += pow(Real(k + 1), static_cast<int>(d > 0 ? d - 1 : 0)) * qk;
        qk *= q;
        if (qk < Precision::near_tol()) break;
    }
    LocalFactorResult out;
    out.value = value;
    out.tail_bound = 2 * Real(static_cast<unsigned>(n)) * sigma_max * abs(scale) * tail;
    if (out.tail_bound > kTailCap)
        throw DivergentTail("local_factor_general: truncation tail above 1e-3");
    return out;
}

Complex log_zeta(const LengthSpectrum& spec, const SigmaParam& sigma,
                 const Complex& lambda, unsigned K) {
    check_convergence(lambda);
    // Compensated (Kahan) accumulation in both components.
    Complex sum(Real(0), Real(0)), comp(Real(0), Real(0));
    for (const PrimeGeodesic& g : spec.geodesics) {
        const Real t = exp(g.length);
        const LocalFactorResult lf = local_factor_sl2(t, g.m_sign, sigma, lambda, K);
        const Complex term = Complex(Real(g.multiplicity), Real(0)) * log(lf.value);
        const Complex y = term - comp;
        const Complex s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

ZetaResult zeta(const LengthSpectrum& spec, const SigmaParam& sigma,
                const Complex& lambda, unsigned K) {
    check_convergence(lambda);
    ZetaResult out;
    out.truncation_err = Real(0);
    Complex value(Real(1), Real(0));
    for (const PrimeGeodesic& g : spec.geodesics) {
        const Real t = exp(g.length);
        const LocalFactorResult lf = local_factor_sl2(t, g.m_sign, sigma, lambda, K);
        for (long m = 0; m < g.multiplicity; ++m) value *= lf.value;
        out.truncation_err += Real(g.multiplicity) * lf.tail_bound;
    }
    out.value = value;

    // Prime-geodesic-theorem heuristic for the classes beyond the cutoff:
    // integral of e^{u(1/2 - Re lambda)}/u du from L_max. An estimate, not a bound.
    const Real a = real(lambda) - Real(1) / 2;
    const Real L = spec.cutoff;
    out.tail_estimate = L > 0 ? exp(-a * L) / (a * L) : Real(0);
    return out;
}

Complex log_derivative(const LengthSpectrum& spec, const SigmaParam& sigma,
                       const Complex& lambda, unsigned K) {
    check_convergence(lambda);
    const int digits = static_cast<int>(Precision::digits());
    const Real log10 = log(Real(10));
    const Real re_shift = real(lambda) + Real(1) / 2;

    Complex sum(Real(0), Real(0)), comp(Real(0), Real(0));
    for (const PrimeGeodesic& g : spec.geodesics) {
        const int eps = sigma(g.m_sign);
        // Iterate cutoff: e^{-m l Re(lambda+1/2)} below the working epsilon.
        const double need = (digits + 5) * static_cast<double>(log10) /
                            static_cast<double>(g.length * re_shift);
        const long m_max = std::max(1L, static_cast<long>(std::ceil(need)));
        for (long m = 1; m <= m_max; ++m) {
            const Real ml = Real(m) * g.length;
            const Complex decay =
                exp(-Complex(ml, Real(0)) * (lambda + Complex(Real(1) / 2, Real(0))));
            const Real geom = 1 - exp(-ml);
            const Real k_trunc = 1 - exp(-ml * (static_cast<int>(K) + 1));
            const Real sign = (eps < 0 && m % 2 != 0) ? Real(-1) : Real(1);
            const Complex term = Complex(sign * Real(g.multiplicity) * g.length * k_trunc, Real(0)) *
                                 decay / Complex(geom, Real(0));
            const Complex y = term - comp;
            const Complex s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
    }
    return sum;
}

}  // namespace szeta

#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>

#include <string>

namespace szeta {

namespace mp = boost::multiprecision;

/// Arbitrary-precision real, working precision set at runtime (decimal digits).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Arbitrary-precision complex on the same backend.
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>, mp::et_off>;

/// Central precision configuration. All tolerances used anywhere in the
/// library derive from the single digit count configured here.
///
/// The working precision is a process-wide setting fixed at startup; worker
/// threads must call apply_thread() on entry because the underlying MPFR
/// default precision is thread-local.
class Precision {
public:
    static void set(unsigned digits);
    static unsigned digits();
    static void apply_thread();

    /// Hyperbolic/elliptic/identity boundary: 10^(8 - digits).
    static Real classification_tol();
    /// Matrix dedup distance: 10^(-digits/2).
    static Real dedup_tol();
    /// General "equal within working accuracy": 10^(5 - digits).
    static Real near_tol();
};

/// Temporarily escalate the working precision on the current thread (RAII).
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline Complex to_complex(const Real& x) { return Complex(x, Real(0)); }
inline Complex to_complex(const Real& re, const Real& im) { return Complex(re, im); }

Real pow10(int exponent);

/// Deterministic decimal rendering with the given significant digit count
/// (the working precision by default). Identical inputs and precision give
/// byte-identical strings.
std::string format_real(const Real& x);
std::string format_real(const Real& x, unsigned digits);

Real parse_real(const std::string& text);

}  // namespace szeta

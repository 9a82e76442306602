#include "szeta/numeric.hpp"

#include <atomic>
#include <sstream>

namespace szeta {

namespace {
std::atomic<unsigned> g_digits{40};
}

void Precision::set(unsigned digits) {
    if (digits < 20) digits = 20;
    g_digits.store(digits, std::memory_order_relaxed);
    apply_thread();
}

unsigned Precision::digits() { return g_digits.load(std::memory_order_relaxed); }

void Precision::apply_thread() {
    Real::default_precision(g_digits.load(std::memory_order_relaxed));
}

Real Precision::classification_tol() { return pow10(8 - static_cast<int>(digits())); }

Real Precision::dedup_tol() { return pow10(-static_cast<int>(digits() / 2)); }

Real Precision::near_tol() { return pow10(5 - static_cast<int>(digits())); }

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real pow10(int exponent) {
    return pow(Real(10), exponent);
}

std::string format_real(const Real& x) { return format_real(x, Precision::digits()); }

std::string format_real(const Real& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}

Real parse_real(const std::string& text) { return Real(text); }

}  // namespace szeta

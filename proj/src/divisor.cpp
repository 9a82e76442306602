#include "szeta/divisor.hpp"

#include "szeta/errors.hpp"

#include <algorithm>

namespace szeta {

namespace {
Real point_tol() { return Precision::dedup_tol(); }

bool same_point(const Complex& x, const Complex& y) {
    const Real tol = point_tol();
    return abs(real(x) - real(y)) < tol && abs(imag(x) - imag(y)) < tol;
}
}  // namespace

LaplaceSpectrum LaplaceSpectrum::make(std::vector<Entry> entries, Real complete_below) {
    const Real tol = point_tol();
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.mu < b.mu; });
    if (entries.empty() || abs(entries.front().mu) > tol || entries.front().mult != 1)
        throw Error("LaplaceSpectrum: first entry must be (0, 1)");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].mu < -tol) throw Error("LaplaceSpectrum: negative eigenvalue");
        if (entries[i].mult <= 0) throw Error("LaplaceSpectrum: nonpositive multiplicity");
        if (i && entries[i].mu - entries[i - 1].mu < tol)
            throw Error("LaplaceSpectrum: entries not distinct at tolerance");
        if (entries[i].mu > complete_below)
            throw Error("LaplaceSpectrum: entry beyond the completeness cutoff");
    }
    return {std::move(entries), std::move(complete_below)};
}

long LaplaceSpectrum::multiplicity_of(const Real& mu) const {
    const Real tol = point_tol();
    for (const Entry& e : entries)
        if (abs(e.mu - mu) < tol) return e.mult;
    return 0;
}

void Divisor::add(const Complex& lambda, long order) {
    if (order == 0) return;
    for (auto& [p, d] : points_) {
        if (same_point(p, lambda)) {
            d += order;
            if (d == 0) {
                points_.erase(std::remove_if(points_.begin(), points_.end(),
                                             [&](const auto& q) { return q.second == 0; }),
                              points_.end());
            }
            return;
        }
    }
    points_.emplace_back(lambda, order);
}

long Divisor::order_at(const Complex& lambda) const {
    for (const auto& [p, d] : points_)
        if (same_point(p, lambda)) return d;
    return 0;
}

std::vector<std::pair<Complex, long>> Divisor::points() const {
    auto pts = points_;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (real(a.first) != real(b.first)) return real(a.first) < real(b.first);
        return imag(a.first) < imag(b.first);
    });
    return pts;
}

Divisor& Divisor::operator+=(const Divisor& other) {
    for (const auto& [p, d] : other.points_) add(p, d);
    return *this;
}

Complex mu_of_lambda(const Complex& lambda) {
    return Complex(Real(1) / 4, Real(0)) - lambda * lambda;
}

Divisor spectral_divisor(const LaplaceSpectrum& spec) {
    Divisor div;
    const Real tol = point_tol();
    for (const auto& e : spec.entries) {
        const Real s = Real(1) / 4 - e.mu;
        if (abs(s) < tol) {
            // mu = 1/4: the two roots coalesce at lambda = 0.
            div.add(Complex(Real(0), Real(0)), 2 * e.mult);
        } else if (s > 0) {
            const Real root = sqrt(s);
            div.add(Complex(root, Real(0)), e.mult);
            div.add(Complex(-root, Real(0)), e.mult);
        } else {
            const Real root = sqrt(-s);
            div.add(Complex(Real(0), root), e.mult);
            div.add(Complex(Real(0), -root), e.mult);
        }
    }
    return div;
}

Divisor trivial_divisor(int genus, const Real& lambda_bound) {
    if (genus < 2) throw Error("trivial_divisor: genus must be >= 2");
    Divisor div;
    for (long n = 0; Real(2 * n + 1) / 2 <= lambda_bound; ++n)
        div.add(Complex(-Real(2 * n + 1) / 2, Real(0)), (2L * genus - 2) * (2 * n + 1));
    return div;
}

Divisor full_divisor(int genus, const LaplaceSpectrum& spec, const Real& lambda_bound) {
    Divisor div = trivial_divisor(genus, lambda_bound);
    Divisor spectral = spectral_divisor(spec);
    for (const auto& [p, d] : spectral.points())
        if (abs(p) <= lambda_bound) div.add(p, d);
    return div;
}

long volume_ratio(int genus) {
    if (genus < 2) throw Error("volume_ratio: genus must be >= 2");
    // vol(Y) = 4*pi*(g-1) by Gauss-Bonnet, vol(S^2) = 4*pi.
    return genus - 1;
}

}  // namespace szeta

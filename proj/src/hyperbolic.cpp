#include "szeta/hyperbolic.hpp"

#include "szeta/errors.hpp"

#include <utility>

namespace szeta {

Real Mat2::dist(const Mat2& o) const {
    Real m = abs(a - o.a);
    Real t = abs(b - o.b);
    if (t > m) m = t;
    t = abs(c - o.c);
    if (t > m) m = t;
    t = abs(d - o.d);
    if (t > m) m = t;
    return m;
}

Real Mat2::projective_dist(const Mat2& o) const {
    Real plus = dist(o);
    Real minus = dist(-o);
    return plus < minus ? plus : minus;
}

Real Mat2::sup_norm() const {
    Real m = abs(a);
    Real t = abs(b);
    if (t > m) m = t;
    t = abs(c);
    if (t > m) m = t;
    t = abs(d);
    if (t > m) m = t;
    return m;
}

void mul_into(Mat2& dst, const Mat2& x, const Mat2& y) {
    dst.a = x.a * y.a + x.b * y.c;
    dst.b = x.a * y.b + x.b * y.d;
    dst.c = x.c * y.a + x.d * y.c;
    dst.d = x.c * y.b + x.d * y.d;
}

namespace {

/// Flip sign so the first row-major entry above tolerance is positive.
Mat2 normalize_projective(Mat2 m) {
    const Real tol = Precision::dedup_tol();
    const Real* entries[4] = {&m.a, &m.b, &m.c, &m.d};
    for (const Real* e : entries) {
        if (abs(*e) > tol) {
            if (*e < 0) return -m;
            return m;
        }
    }
    return m;  // numerically zero matrix; caller's det check will reject it
}

}  // namespace

GroupElement::GroupElement(Mat2 raw, Word word) : word_(std::move(word)) {
    lift_trace_sign_ = raw.trace() < 0 ? -1 : +1;
    mat_ = normalize_projective(std::move(raw));
}

bool GroupElement::is_identity(const Real& tol) const {
    return mat_.projective_dist(Mat2::identity()) < tol;
}

Real arccosh(const Real& x) {
    return log(x + sqrt(x * x - 1));
}

Classification classify(const GroupElement& g) {
    const Real tol = Precision::classification_tol();
    if (abs(g.mat().det() - 1) > tol)
        throw Error("classify: matrix is not unimodular within tolerance");
    if (g.is_identity(tol)) return {ElementClass::Identity, {}};

    const Real tr_abs = g.trace_abs();
    if (tr_abs > 2 + tol) {
        HyperbolicData h;
        h.length = 2 * arccosh(tr_abs / 2);
        h.t = exp(h.length);
        h.m_sign = g.lift_trace_sign();
        return {ElementClass::Hyperbolic, std::move(h)};
    }
    if (tr_abs < 2 - tol) return {ElementClass::Elliptic, {}};
    throw IndeterminateClass("classify: |tr| within tolerance of 2; raise precision");
}

Real translation_length(const Mat2& m) {
    const Real tr_abs = abs(m.trace());
    if (!(tr_abs > 2 + Precision::classification_tol()))
        throw NotHyperbolic("translation_length: |tr| <= 2");
    return 2 * arccosh(tr_abs / 2);
}

Real translation_length(const GroupElement& g) { return translation_length(g.mat()); }

}  // namespace szeta

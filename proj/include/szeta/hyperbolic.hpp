#pragma once

#include "szeta/numeric.hpp"

#include <cstdint>
#include <vector>

namespace szeta {

/// Signed generator index: +k is the k-th generator (1-based), -k its inverse.
using Letter = std::int16_t;
using Word = std::vector<Letter>;

/// 2x2 real matrix, row-major (a b / c d). Value type, no invariants of its own.
struct Mat2 {
    Real a, b, c, d;

    Mat2() : a(0), b(0), c(0), d(0) {}
    Mat2(Real a_, Real b_, Real c_, Real d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return {Real(1), Real(0), Real(0), Real(1)}; }

    Real det() const { return a * d - b * c; }
    Real trace() const { return a + d; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    /// Inverse assuming det = 1.
    Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }

    /// sup norm of entrywise difference.
    Real dist(const Mat2& o) const;
    /// min(dist(o), dist(-o)) — distance modulo the +-I identification.
    Real projective_dist(const Mat2& o) const;

    Real sup_norm() const;
    /// Frobenius norm squared; for det-1 matrices this is 2*cosh(displacement at i).
    Real frobenius_sq() const { return a * a + b * b + c * c + d * d; }
};

/// Multiply into dst without allocating fresh limbs (dst may not alias x or y).
void mul_into(Mat2& dst, const Mat2& x, const Mat2& y);

/// Group element of a discrete subgroup of SL(2,R). The matrix is normalized
/// on construction so the first entry exceeding the dedup tolerance in
/// row-major order is positive (canonical representative of {M, -M}). The
/// trace sign of the unnormalized word product is kept separately: it is the
/// M-part sign of the element in the lift defined by the generator matrices.
class GroupElement {
public:
    GroupElement() : mat_(Mat2::identity()), lift_trace_sign_(+1) {}
    /// `raw` is the exact product of generator matrices over `word`.
    GroupElement(Mat2 raw, Word word);

    const Mat2& mat() const { return mat_; }
    const Word& word() const { return word_; }
    /// Sign of the trace of the word product (the lift), +1 for trace 0 edge.
    int lift_trace_sign() const { return lift_trace_sign_; }

    Real trace_abs() const { return abs(mat_.trace()); }
    bool is_identity(const Real& tol) const;

private:
    Mat2 mat_;
    Word word_;
    int lift_trace_sign_;
};

enum class ElementClass { Identity, Elliptic, Parabolic, Hyperbolic };

/// Conjugation data of a hyperbolic element: g ~ m_g a_g with a_g^rho > 1.
struct HyperbolicData {
    Real length;  // geodesic length l = 2*arccosh(|tr|/2)
    Real t;       // e^l, the squared A-part eigenvalue ratio
    int m_sign;   // +1 if m_g = I, -1 if m_g = -I
};

struct Classification {
    ElementClass kind;
    HyperbolicData hyperbolic;  // valid only when kind == Hyperbolic
};

/// Classify by trace. Throws IndeterminateClass when |tr| is within the
/// classification tolerance of 2 and the element is not the identity.
Classification classify(const GroupElement& g);

/// l = 2*arccosh(|tr|/2). Throws NotHyperbolic.
Real translation_length(const GroupElement& g);
Real translation_length(const Mat2& m);

/// arccosh for x >= 1.
Real arccosh(const Real& x);

}  // namespace szeta

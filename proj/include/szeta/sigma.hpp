#pragma once

namespace szeta {

/// One of the two irreducible representations of M = {+-I}: the trivial
/// character or the sign character theta.
struct SigmaParam {
    enum class Name { Trivial, Theta };

    Name name;
    int sign_on_minus_I;  // +1 for trivial, -1 for theta

    static SigmaParam trivial() { return {Name::Trivial, +1}; }
    static SigmaParam theta() { return {Name::Theta, -1}; }

    /// Value of the character on m = +-I.
    int operator()(int m_sign) const { return m_sign < 0 ? sign_on_minus_I : +1; }
};

}  // namespace szeta

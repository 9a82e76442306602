#pragma once

#include "szeta/numeric.hpp"

#include <functional>

namespace szeta {

/// (1/2*pi*i) times the integral of f over the circle |z - center| = radius,
/// positively oriented, by the M-point trapezoid rule. For f meromorphic with
/// no pole on the circle this converges exponentially in M and returns the
/// sum of the residues enclosed.
Complex contour_integral(const Complex& center, const Real& radius,
                         const std::function<Complex(const Complex&)>& f,
                         unsigned points = 128);

}  // namespace szeta

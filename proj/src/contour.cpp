#include "szeta/contour.hpp"

#include <boost/math/constants/constants.hpp>

namespace szeta {

Complex contour_integral(const Complex& center, const Real& radius,
                         const std::function<Complex(const Complex&)>& f,
                         unsigned points) {
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    Complex acc(Real(0), Real(0));
    for (unsigned j = 0; j < points; ++j) {
        const Real theta = two_pi * j / points;
        const Complex offset(radius * cos(theta), radius * sin(theta));
        acc += f(center + offset) * offset;
    }
    return acc / Complex(Real(points), Real(0));
}

}  // namespace szeta

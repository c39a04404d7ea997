#include "nbpolar/rng.hpp"

#include <cmath>
#include <numbers>

namespace nbpolar {

std::pair<double, double> Rng::next_gaussian_pair() {
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace nbpolar

#include "nbpolar/signal_set.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nbpolar {

const std::complex<double>& SignalSet::point(int k) const {
    if (k < 0 || k >= q)
        throw std::out_of_range("SignalSet: symbol " + std::to_string(k) +
                                " out of range for q=" + std::to_string(q));
    return points[static_cast<std::size_t>(k)];
}

SignalSet make_psk(int q, double es) {
    if (q < 2) throw std::invalid_argument("make_psk: q must be >= 2");
    if (es <= 0.0) throw std::invalid_argument("make_psk: es must be positive");
    SignalSet set;
    set.q = q;
    set.es = es;
    set.label = "psk" + std::to_string(q);
    set.points.reserve(static_cast<std::size_t>(q));
    const double r = std::sqrt(es);
    for (int k = 0; k < q; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / q;
        set.points.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
    return set;
}

SignalSet make_rotated4(double es) {
    if (es <= 0.0) throw std::invalid_argument("make_rotated4: es must be positive");
    SignalSet set;
    set.q = 4;
    set.es = es;
    set.label = "rotated4";
    const double r = std::sqrt(es);
    const double y = 2.0 * std::sqrt(2.0) / 3.0;
    set.points = {{r, 0.0}, {r / 3.0, r * y}, {-r, 0.0}, {-r / 3.0, -r * y}};
    return set;
}

double pair_distance(const SignalSet& set, int i, int j) {
    return std::abs(set.point(i) - set.point(j));
}

bool is_group_matched(const SignalSet& set, double tol) {
    for (int k = 1; k < set.q; ++k) {
        const double ref = pair_distance(set, k, 0);
        for (int l = 1; l < set.q; ++l)
            if (std::abs(pair_distance(set, (l + k) % set.q, l) - ref) > tol)
                return false;
    }
    return true;
}

SignalSet signal_set_by_name(const std::string& name) {
    if (name == "rotated4") return make_rotated4(1.0);
    if (name.rfind("psk", 0) == 0) {
        const int q = std::stoi(name.substr(3));
        return make_psk(q, 1.0);
    }
    throw std::invalid_argument("unknown signal set: " + name);
}

}  // namespace nbpolar

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nbpolar {

/// A 2-D signal set: q complex constellation points with energy es
/// (joule per 2 dimensions). Immutable after construction.
struct SignalSet {
    int q = 0;
    double es = 1.0;
    std::vector<std::complex<double>> points;
    std::string label;

    const std::complex<double>& point(int k) const;
};

/// q-PSK: point k = sqrt(es) * exp(j*2*pi*k/q).
SignalSet make_psk(int q, double es = 1.0);

/// The rotated 4-point set: sqrt(es) * {(1,0), (1/3, 2*sqrt(2)/3),
/// (-1,0), (-1/3, -2*sqrt(2)/3)}.
SignalSet make_rotated4(double es = 1.0);

/// Euclidean distance between points i and j.
double pair_distance(const SignalSet& set, int i, int j);

/// True iff ||s_{(l+k) mod q} - s_l|| = ||s_k - s_0|| for all l, k.
bool is_group_matched(const SignalSet& set, double tol = 1e-9);

/// Resolve "psk<q>" or "rotated4" to a set with es = 1.
SignalSet signal_set_by_name(const std::string& name);

}  // namespace nbpolar

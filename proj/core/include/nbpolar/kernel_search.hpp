#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbpolar/distance.hpp"
#include "nbpolar/kernel.hpp"
#include "nbpolar/signal_set.hpp"

namespace nbpolar {

/// Lexicographic ordering on (d_min, -N(d_min), d_2, -N(d_2), ...):
/// larger d_min wins, ties broken by smaller multiplicity, then the next
/// distance. Returns <0 if a is worse, 0 if equal, >0 if a is better.
int compare_spectra(const DistanceSpectrum& a, const DistanceSpectrum& b);

struct SearchReport {
    int q = 0;
    std::string set_label;
    std::string objective = "lexicographic-spectrum-max";
    std::vector<std::vector<int>> best_permutations;  // sorted, all maximizers
    DistanceSpectrum best_spectrum;
    bool equidistant_found = false;
    std::uint64_t search_space_size = 0;
};

/// Exhaustive search over permutation kernels u1 + pi(u2) mod q, scored
/// by compare_spectra on the good-channel spectrum. For group-matched
/// sets only pi with pi(0) = 0 are enumerated (adding a constant shifts
/// all outputs by a rotation); pass full_space to override. q <= 8.
SearchReport search_permutations(const SignalSet& set, bool full_space = false);

}  // namespace nbpolar

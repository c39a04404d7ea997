#include "nbpolar/kernel_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nbpolar {

namespace {

// Score for one candidate. When the spectrum varies with the reference
// pair, the kernel is only as good as its worst reference.
DistanceSpectrum candidate_spectrum(const Kernel& k, const SignalSet& set) {
    DistanceSpectrum s = good_channel_spectrum(k, set);
    if (s.uniform) return s;
    for (int u1 = 0; u1 < set.q; ++u1)
        for (int u2 = 0; u2 < set.q; ++u2) {
            DistanceSpectrum at = good_channel_spectrum_at(k, set, u1, u2);
            at.uniform = false;
            if (compare_spectra(at, s) < 0) s = std::move(at);
        }
    return s;
}

}  // namespace

int compare_spectra(const DistanceSpectrum& a, const DistanceSpectrum& b) {
    if (a.multiplicity_total() != b.multiplicity_total())
        throw std::invalid_argument("compare_spectra: spectra of different alphabets");
    const std::size_t n = std::min(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [da, na] = a.entries[i];
        const auto& [db, nb] = b.entries[i];
        if (std::abs(da - db) > kSpectrumBinTol) return da > db ? 1 : -1;
        if (na != nb) return na < nb ? 1 : -1;
    }
    if (a.entries.size() != b.entries.size())
        return a.entries.size() < b.entries.size() ? 1 : -1;
    return 0;
}

SearchReport search_permutations(const SignalSet& set, bool full_space) {
    const int q = set.q;
    if (q < 2 || q > 8)
        throw std::invalid_argument("search_permutations: exhaustive search needs 2 <= q <= 8");

    const bool fold_translations = is_group_matched(set) && !full_space;

    SearchReport report;
    report.q = q;
    report.set_label = set.label;

    std::vector<int> pi(static_cast<std::size_t>(q));
    std::iota(pi.begin(), pi.end(), 0);
    // With pi(0) fixed, permute positions 1..q-1 only.
    const std::size_t first = fold_translations ? 1 : 0;

    bool have_best = false;
    do {
        ++report.search_space_size;
        const Kernel k = kernel_from_permutation(q, pi);
        const DistanceSpectrum s = candidate_spectrum(k, set);
        if (!have_best || compare_spectra(s, report.best_spectrum) > 0) {
            report.best_spectrum = s;
            report.best_permutations.assign(1, pi);
            have_best = true;
        } else if (compare_spectra(s, report.best_spectrum) == 0) {
            report.best_permutations.push_back(pi);
        }
    } while (std::next_permutation(pi.begin() + static_cast<std::ptrdiff_t>(first), pi.end()));

    std::sort(report.best_permutations.begin(), report.best_permutations.end());
    report.equidistant_found = is_equidistant(report.best_spectrum, q);
    return report;
}

}  // namespace nbpolar

#include "nbpolar/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nbpolar {

namespace {

void bin_distance(std::vector<std::pair<double, int>>& entries, double d) {
    for (auto& [dist, mult] : entries)
        if (std::abs(dist - d) <= kSpectrumBinTol) {
            ++mult;
            return;
        }
    entries.emplace_back(d, 1);
}

std::vector<std::pair<double, int>> collect_good(const Kernel& k, const SignalSet& set,
                                                 int u1, int u2) {
    std::vector<std::pair<double, int>> entries;
    for (int v = 0; v < set.q; ++v) {
        if (v == u2) continue;
        const double dx = pair_distance(set, k(u1, u2), k(u1, v));
        const double du = pair_distance(set, u2, v);
        bin_distance(entries, std::sqrt(dx * dx + du * du));
    }
    std::sort(entries.begin(), entries.end());
    return entries;
}

std::vector<std::pair<double, int>> collect_bad(const Kernel& k, const SignalSet& set,
                                                int u1, int u2) {
    std::vector<std::pair<double, int>> entries;
    for (int a = 0; a < set.q; ++a) {
        if (a == u1) continue;
        for (int b = 0; b < set.q; ++b) {
            const double dx = pair_distance(set, k(u1, u2), k(a, b));
            const double du = pair_distance(set, u2, b);
            bin_distance(entries, std::sqrt(dx * dx + du * du));
        }
    }
    std::sort(entries.begin(), entries.end());
    return entries;
}

bool same_spectrum(const std::vector<std::pair<double, int>>& a,
                   const std::vector<std::pair<double, int>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i].first - b[i].first) > kSpectrumBinTol || a[i].second != b[i].second)
            return false;
    return true;
}

template <typename Collect>
DistanceSpectrum build_spectrum(const Kernel& k, const SignalSet& set, ChannelKind kind,
                                Collect collect) {
    if (k.q() != set.q)
        throw std::invalid_argument("spectrum: kernel and signal set disagree on q");
    DistanceSpectrum s;
    s.kind = kind;
    s.entries = collect(k, set, 0, 0);
    for (int u1 = 0; u1 < set.q && s.uniform; ++u1)
        for (int u2 = 0; u2 < set.q; ++u2) {
            if (u1 == 0 && u2 == 0) continue;
            if (!same_spectrum(s.entries, collect(k, set, u1, u2))) {
                s.uniform = false;
                break;
            }
        }
    for (const auto& [d, n] : s.entries) s.total_d += n * d * d;
    return s;
}

}  // namespace

int DistanceSpectrum::multiplicity_total() const {
    int total = 0;
    for (const auto& [d, n] : entries) total += n;
    return total;
}

DistanceSpectrum good_channel_spectrum(const Kernel& k, const SignalSet& set) {
    return build_spectrum(k, set, ChannelKind::Good, collect_good);
}

DistanceSpectrum bad_channel_spectrum(const Kernel& k, const SignalSet& set) {
    return build_spectrum(k, set, ChannelKind::Bad, collect_bad);
}

DistanceSpectrum good_channel_spectrum_at(const Kernel& k, const SignalSet& set, int u1, int u2) {
    if (k.q() != set.q)
        throw std::invalid_argument("spectrum: kernel and signal set disagree on q");
    if (u1 < 0 || u1 >= set.q || u2 < 0 || u2 >= set.q)
        throw std::invalid_argument("spectrum: reference pair out of range");
    DistanceSpectrum s;
    s.kind = ChannelKind::Good;
    s.entries = collect_good(k, set, u1, u2);
    for (const auto& [d, n] : s.entries) s.total_d += n * d * d;
    return s;
}

bool is_equidistant(const DistanceSpectrum& s, int q) {
    if (s.kind != ChannelKind::Good)
        throw std::invalid_argument("is_equidistant: expects a good-channel spectrum");
    return s.entries.size() == 1 && s.entries.front().second == q - 1;
}

double equidistant_dmin_bound(const SignalSet& set) {
    double sum = 0.0;
    for (int k = 1; k < set.q; ++k) {
        const double d = pair_distance(set, k, 0);
        sum += d * d;
    }
    return std::sqrt(2.0 * sum / (set.q - 1));
}

ConservationResult conservation_check(const Kernel& k, const SignalSet& set) {
    if (k.q() != set.q)
        throw std::invalid_argument("conservation_check: kernel and set disagree on q");
    ConservationResult r;
    r.group_matched = is_group_matched(set);
    double sum0 = 0.0;
    for (int i = 1; i < set.q; ++i) {
        const double d = pair_distance(set, i, 0);
        sum0 += d * d;
    }
    r.expected_total = 2.0 * sum0;
    for (int u1 = 0; u1 < set.q; ++u1)
        for (int u2 = 0; u2 < set.q; ++u2) {
            double total = 0.0;
            for (int v = 0; v < set.q; ++v) {
                if (v == u2) continue;
                const double dx = pair_distance(set, k(u1, u2), k(u1, v));
                const double du = pair_distance(set, u2, v);
                total += dx * dx + du * du;
            }
            r.max_deviation = std::max(r.max_deviation, std::abs(total - r.expected_total));
        }
    r.holds = r.max_deviation <= 1e-9;
    return r;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double union_bound(const DistanceSpectrum& s, double snr_linear, double es) {
    if (snr_linear <= 0.0) throw std::invalid_argument("union_bound: snr must be positive");
    const double scale = std::sqrt(snr_linear / 2.0) / std::sqrt(es);
    double bound = 0.0;
    for (const auto& [d, n] : s.entries) bound += n * q_function(d * scale);
    return bound;
}

double jensen_gap(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("jensen_gap: a, b must be positive");
    return q_function(a) + q_function(b) - 2.0 * q_function(std::sqrt((a * a + b * b) / 2.0));
}

std::vector<BoundComparisonRow> bound_comparison_almost_equidistant(
    const std::vector<double>& snr_grid_db) {
    const double d_far = std::sqrt(8.0);        // sqrt(2) * ||s_0 - s_4|| at E_s = 1
    const double d_eq = std::sqrt(32.0 / 7.0);  // hypothetical equidistant d_min for 8-PSK
    std::vector<BoundComparisonRow> rows;
    rows.reserve(snr_grid_db.size());
    for (double snr_db : snr_grid_db) {
        const double s = std::sqrt(db_to_linear(snr_db) / 2.0);
        rows.push_back({snr_db, 6.0 * q_function(2.0 * s) + q_function(d_far * s),
                        7.0 * q_function(d_eq * s)});
    }
    return rows;
}

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

}  // namespace nbpolar

#pragma once

#include <vector>

#include "nbpolar/kernel.hpp"
#include "nbpolar/signal_set.hpp"

namespace nbpolar {

enum class ChannelKind { Good, Bad };

/// Multiset of competitor distances (in sqrt(E_s) units) with
/// multiplicities, sorted by increasing distance.
struct DistanceSpectrum {
    ChannelKind kind = ChannelKind::Good;
    std::vector<std::pair<double, int>> entries;  // (distance, multiplicity)
    bool uniform = true;   // identical across every reference pair (u1, u2)
    double total_d = 0.0;  // sum of N(d) * d^2

    double dmin() const { return entries.front().first; }
    int kissing_number() const { return entries.front().second; }
    int multiplicity_total() const;
};

/// Distances equal when within this absolute tolerance (E_s = 1).
inline constexpr double kSpectrumBinTol = 1e-9;

/// Competitor distances d = sqrt(||s_f(u1,u2) - s_f(u1,u2')||^2 +
/// ||s_u2 - s_u2'||^2) over u2' != u2, from reference (u1,u2) = (0,0).
/// Every other reference pair is checked for uniformity.
DistanceSpectrum good_channel_spectrum(const Kernel& k, const SignalSet& set);

/// Competitor distances over all u1' != u1 and all u2' (q(q-1) terms),
/// from reference (0,0).
DistanceSpectrum bad_channel_spectrum(const Kernel& k, const SignalSet& set);

/// Good-channel spectrum seen from one specific reference pair. Only
/// meaningful on its own when the full spectrum is non-uniform.
DistanceSpectrum good_channel_spectrum_at(const Kernel& k, const SignalSet& set, int u1, int u2);

/// True iff the good spectrum puts all q-1 competitors at d_min.
bool is_equidistant(const DistanceSpectrum& s, int q);

/// sqrt((2/(q-1)) * sum_{k=1..q-1} ||s_k - s_0||^2), the d_min any good
/// channel can reach over this set.
double equidistant_dmin_bound(const SignalSet& set);

struct ConservationResult {
    bool holds = false;
    bool group_matched = false;  // the premise behind the identity
    double expected_total = 0.0;
    double max_deviation = 0.0;
};

/// Checks sum_{u2' != u2} (||s_f(u1,u2) - s_f(u1,u2')||^2 +
/// ||s_u2 - s_u2'||^2) = 2 * sum_k ||s_k - s_0||^2 at every reference,
/// within 1e-9.
ConservationResult conservation_check(const Kernel& k, const SignalSet& set);

/// Gaussian tail probability Q(x).
double q_function(double x);

/// sum_d N(d) * Q((d / sqrt(es)) * sqrt(snr/2)); snr is linear E_s/N_0.
double union_bound(const DistanceSpectrum& s, double snr_linear, double es = 1.0);

/// Q(a) + Q(b) - 2 Q(sqrt((a^2+b^2)/2)); positive for a != b.
double jensen_gap(double a, double b);

struct BoundComparisonRow {
    double snr_db;
    double almost_equidistant;  // 6Q(2 sqrt(SNR/2)) + Q(2.83 sqrt(SNR/2))
    double equidistant;         // 7Q(2.14 sqrt(SNR/2))
};

/// The 8-PSK almost-equidistant bound next to the hypothetical
/// equidistant one, per SNR grid point.
std::vector<BoundComparisonRow> bound_comparison_almost_equidistant(
    const std::vector<double>& snr_grid_db);

double db_to_linear(double snr_db);

}  // namespace nbpolar

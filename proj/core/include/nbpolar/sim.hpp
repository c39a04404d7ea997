#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "nbpolar/codec.hpp"
#include "nbpolar/rng.hpp"
#include "nbpolar/signal_set.hpp"

namespace nbpolar {

/// AWGN parameters. sigma^2 = N_0 = es / 10^(snr_db/10), joule/2-dim.
struct NoiseModel {
    double es = 1.0;
    double snr_db = 0.0;

    double snr_linear() const;
    double sigma2() const;  // noise power per 2 dimensions
};

struct SimulationReport {
    std::string config_label;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t info_symbols_per_frame = 0;
    double fer = 0.0;
    double ser = 0.0;
    double fer_ci_low = 0.0, fer_ci_high = 0.0;  // 95%
    double ser_ci_low = 0.0, ser_ci_high = 0.0;
    std::uint64_t seed = 0;
    double wall_time_seconds = 0.0;
};

/// Per-index genie symbol-error estimates.
struct ReliabilityProfile {
    std::vector<double> error_rate;  // length N, each in [0, 1]
    std::uint64_t trials = 0;
    double design_snr_db = 0.0;
};

/// 95% confidence interval for k successes in n trials: normal
/// approximation, exact Clopper-Pearson when k < 10.
std::pair<double, double> binomial_ci95(std::uint64_t k, std::uint64_t n);

std::vector<std::complex<double>> modulate(const std::vector<int>& x, const SignalSet& set);

/// Adds circular complex Gaussian noise, variance sigma^2/2 per real
/// dimension.
std::vector<std::complex<double>> add_noise(const std::vector<std::complex<double>>& s,
                                            const NoiseModel& nm, Rng& rng);

/// Per position, a vector proportional to exp(-||y - s_x||^2 / sigma^2),
/// normalized.
std::vector<LikelihoodVector> channel_likelihoods(const std::vector<std::complex<double>>& y,
                                                  const SignalSet& set, const NoiseModel& nm);

/// Monte-Carlo FER/SER: uniform information symbols, frozen = 0,
/// encode -> modulate -> noise -> likelihoods -> SC decode. Deterministic
/// given (seed, trials, cfg) for any worker count.
SimulationReport run_fer(const CodeConfig& cfg, const SignalSet& set, const NoiseModel& nm,
                         std::uint64_t trials, std::uint64_t seed, int workers = 0);

/// Genie-aided per-index error frequency over random inputs.
ReliabilityProfile estimate_reliabilities(const CodeConfig& cfg, const SignalSet& set,
                                          const NoiseModel& nm, std::uint64_t trials,
                                          std::uint64_t seed, int workers = 0);

/// Freeze the N-K indices with the highest error estimates; ties broken
/// by freezing the larger index first.
std::vector<int> select_frozen_set(const ReliabilityProfile& profile, std::size_t info_count);

/// Indices whose estimate lies strictly inside (low, high).
int unpolarized_count(const ReliabilityProfile& profile, double low = 0.05, double high = 0.95);

}  // namespace nbpolar

#include "nbpolar/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nbpolar {

namespace {

// log P(X <= k) terms are cheap for the small k this is used with.
double binom_cdf(std::uint64_t k, std::uint64_t n, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return k >= n ? 1.0 : 0.0;
    double cdf = 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    for (std::uint64_t i = 0; i <= k; ++i) {
        const double lc = std::lgamma(static_cast<double>(n) + 1.0) -
                          std::lgamma(static_cast<double>(i) + 1.0) -
                          std::lgamma(static_cast<double>(n - i) + 1.0);
        cdf += std::exp(lc + static_cast<double>(i) * lp + static_cast<double>(n - i) * lq);
    }
    return std::min(cdf, 1.0);
}

double bisect(double lo, double hi, auto&& f) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

template <typename PerTrial>
void run_trials(std::uint64_t trials, int workers, PerTrial&& per_trial) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || trials < 2) {
        for (std::uint64_t t = 0; t < trials; ++t) per_trial(t, 0);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + static_cast<std::uint64_t>(workers) - 1) /
                                static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&per_trial, lo, hi, w] {
            for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, w);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace

double NoiseModel::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

double NoiseModel::sigma2() const {
    const double s2 = es / snr_linear();
    if (!(s2 > 0.0)) throw std::invalid_argument("NoiseModel: sigma2 must be positive");
    return s2;
}

std::pair<double, double> binomial_ci95(std::uint64_t k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("binomial_ci95: n must be positive");
    if (k > n) throw std::invalid_argument("binomial_ci95: k exceeds n");
    const double p = static_cast<double>(k) / static_cast<double>(n);
    if (k >= 10 && n - k >= 10) {
        const double hw = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        return {std::max(0.0, p - hw), std::min(1.0, p + hw)};
    }
    // Clopper-Pearson
    const double alpha2 = 0.025;
    double lo = 0.0, hi = 1.0;
    if (k > 0)
        lo = bisect(0.0, p, [&](double x) { return 1.0 - binom_cdf(k - 1, n, x) < alpha2; });
    if (k < n)
        hi = bisect(p, 1.0, [&](double x) { return binom_cdf(k, n, x) > alpha2; });
    return {lo, hi};
}

std::vector<std::complex<double>> modulate(const std::vector<int>& x, const SignalSet& set) {
    std::vector<std::complex<double>> out;
    out.reserve(x.size());
    for (int s : x) out.push_back(set.point(s));
    return out;
}

std::vector<std::complex<double>> add_noise(const std::vector<std::complex<double>>& s,
                                            const NoiseModel& nm, Rng& rng) {
    const double scale = std::sqrt(nm.sigma2() / 2.0);
    std::vector<std::complex<double>> y;
    y.reserve(s.size());
    for (const auto& v : s) {
        const auto [g1, g2] = rng.next_gaussian_pair();
        y.emplace_back(v.real() + scale * g1, v.imag() + scale * g2);
    }
    return y;
}

std::vector<LikelihoodVector> channel_likelihoods(const std::vector<std::complex<double>>& y,
                                                  const SignalSet& set, const NoiseModel& nm) {
    const double sigma2 = nm.sigma2();
    std::vector<LikelihoodVector> out(y.size());
    std::vector<double> d2(static_cast<std::size_t>(set.q));
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d2min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < set.q; ++k) {
            const double d = std::abs(y[i] - set.point(k));
            d2[static_cast<std::size_t>(k)] = d * d;
            d2min = std::min(d2min, d2[static_cast<std::size_t>(k)]);
        }
        LikelihoodVector w(static_cast<std::size_t>(set.q));
        double sum = 0.0;
        for (int k = 0; k < set.q; ++k) {
            w[static_cast<std::size_t>(k)] =
                std::exp(-(d2[static_cast<std::size_t>(k)] - d2min) / sigma2);
            sum += w[static_cast<std::size_t>(k)];
        }
        for (double& v : w) v /= sum;
        out[i] = std::move(w);
    }
    return out;
}

SimulationReport run_fer(const CodeConfig& cfg, const SignalSet& set, const NoiseModel& nm,
                         std::uint64_t trials, std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("run_fer: trials must be >= 1");
    if (set.q != cfg.q) throw std::invalid_argument("run_fer: signal set q != code q");
    cfg.check();
    const auto t0 = std::chrono::steady_clock::now();

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    const std::vector<char> frozen = cfg.frozen_mask();
    std::vector<std::uint64_t> frame_err(static_cast<std::size_t>(workers), 0);
    std::vector<std::uint64_t> sym_err(static_cast<std::size_t>(workers), 0);

    run_trials(trials, workers, [&](std::uint64_t trial, int w) {
        Rng rng = Rng::for_trial(seed, trial);
        std::vector<int> u(cfg.block_length, 0);
        for (std::size_t i = 0; i < cfg.block_length; ++i)
            if (!frozen[i]) u[i] = rng.next_int(cfg.q);
        const auto x = polar_encode(u, cfg);
        const auto y = add_noise(modulate(x, set), nm, rng);
        const auto decoded = polar_decode_sc(channel_likelihoods(y, set, nm), cfg);
        std::uint64_t mism = 0;
        for (std::size_t i = 0; i < cfg.block_length; ++i)
            if (!frozen[i] && decoded.decisions[i] != u[i]) ++mism;
        sym_err[static_cast<std::size_t>(w)] += mism;
        if (mism) ++frame_err[static_cast<std::size_t>(w)];
    });

    SimulationReport r;
    r.config_label = "q=" + std::to_string(cfg.q) + " N=" + std::to_string(cfg.block_length) +
                     " K=" + std::to_string(cfg.info_count());
    r.snr_db = nm.snr_db;
    r.trials = trials;
    r.seed = seed;
    r.frame_errors = std::accumulate(frame_err.begin(), frame_err.end(), std::uint64_t{0});
    r.symbol_errors = std::accumulate(sym_err.begin(), sym_err.end(), std::uint64_t{0});
    r.info_symbols_per_frame = cfg.info_count();
    r.fer = static_cast<double>(r.frame_errors) / static_cast<double>(trials);
    const std::uint64_t sym_total = trials * r.info_symbols_per_frame;
    r.ser = sym_total ? static_cast<double>(r.symbol_errors) / static_cast<double>(sym_total) : 0.0;
    std::tie(r.fer_ci_low, r.fer_ci_high) = binomial_ci95(r.frame_errors, trials);
    if (sym_total)
        std::tie(r.ser_ci_low, r.ser_ci_high) = binomial_ci95(r.symbol_errors, sym_total);
    r.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ReliabilityProfile estimate_reliabilities(const CodeConfig& cfg, const SignalSet& set,
                                          const NoiseModel& nm, std::uint64_t trials,
                                          std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("estimate_reliabilities: trials must be >= 1");
    if (set.q != cfg.q)
        throw std::invalid_argument("estimate_reliabilities: signal set q != code q");
    cfg.check();
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(cfg.block_length, 0));

    run_trials(trials, workers, [&](std::uint64_t trial, int w) {
        Rng rng = Rng::for_trial(seed, trial);
        std::vector<int> u(cfg.block_length);
        for (int& s : u) s = rng.next_int(cfg.q);
        const auto x = polar_encode(u, cfg);
        const auto y = add_noise(modulate(x, set), nm, rng);
        const auto flags = polar_decode_genie(channel_likelihoods(y, set, nm), cfg, u);
        auto& c = counts[static_cast<std::size_t>(w)];
        for (std::size_t i = 0; i < cfg.block_length; ++i)
            if (flags[i]) ++c[i];
    });

    ReliabilityProfile profile;
    profile.trials = trials;
    profile.design_snr_db = nm.snr_db;
    profile.error_rate.assign(cfg.block_length, 0.0);
    for (std::size_t i = 0; i < cfg.block_length; ++i) {
        std::uint64_t total = 0;
        for (const auto& c : counts) total += c[i];
        profile.error_rate[i] = static_cast<double>(total) / static_cast<double>(trials);
    }
    return profile;
}

std::vector<int> select_frozen_set(const ReliabilityProfile& profile, std::size_t info_count) {
    const std::size_t n = profile.error_rate.size();
    if (info_count > n) throw std::invalid_argument("select_frozen_set: K out of range");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ea = profile.error_rate[static_cast<std::size_t>(a)];
        const double eb = profile.error_rate[static_cast<std::size_t>(b)];
        if (ea != eb) return ea > eb;
        return a > b;  // ties: larger index frozen first
    });
    std::vector<int> frozen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n - info_count));
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

int unpolarized_count(const ReliabilityProfile& profile, double low, double high) {
    int count = 0;
    for (double e : profile.error_rate)
        if (e > low && e < high) ++count;
    return count;
}

}  // namespace nbpolar

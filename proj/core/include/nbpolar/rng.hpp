#pragma once

#include <cstdint>
#include <utility>

namespace nbpolar {

/// Counter-based deterministic stream: the state is derived from
/// (master seed, stream id), so per-trial streams are independent of how
/// trials are partitioned across workers. The output function is
/// splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}

    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
        return Rng(mix(master_seed + 0x9E3779B97F4A7C15ull) ^ mix(trial + 1));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in 0..bound-1 (bound <= 2^31).
    int next_int(int bound) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound));
    }

    /// Standard normal pair (Box-Muller).
    std::pair<double, double> next_gaussian_pair();

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

}  // namespace nbpolar

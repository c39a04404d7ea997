#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nbpolar/codec.hpp"
#include "nbpolar/rng.hpp"

using namespace nbpolar;

namespace {

CodeConfig config_for(const Kernel& k, int stages, std::vector<int> frozen = {}) {
    return make_code_config(uniform_schedule(k, stages), std::move(frozen));
}

// Kronecker power of F = [[1,0],[1,1]] over GF(2); x = u G in natural
// index order.
std::vector<std::vector<int>> kron_power(int n) {
    std::vector<std::vector<int>> g{{1}};
    for (int t = 0; t < n; ++t) {
        const std::size_t m = g.size();
        std::vector<std::vector<int>> next(2 * m, std::vector<int>(2 * m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                next[i][j] = g[i][j];
                next[m + i][j] = g[i][j];
                next[m + i][m + j] = g[i][j];
            }
        g = std::move(next);
    }
    return g;
}

std::vector<int> random_symbols(int q, std::size_t n, Rng& rng) {
    std::vector<int> u(n);
    for (auto& s : u) s = rng.next_int(q);
    return u;
}

LikelihoodVector random_likelihood(int q, Rng& rng) {
    LikelihoodVector l(static_cast<std::size_t>(q));
    double sum = 0.0;
    for (auto& p : l) {
        p = 0.01 + rng.next_double();
        sum += p;
    }
    for (auto& p : l) p /= sum;
    return l;
}

// Exact SC oracle by prefix marginalization: score(u_i = a) sums the
// product of channel likelihoods over every completion of the prefix.
struct ScOracle {
    const CodeConfig& cfg;
    const std::vector<LikelihoodVector>& likes;

    double prefix_score(std::vector<int>& u, std::size_t filled) const {
        if (filled == cfg.block_length) {
            const std::vector<int> x = polar_encode(u, cfg);
            double p = 1.0;
            for (std::size_t j = 0; j < x.size(); ++j)
                p *= likes[j][static_cast<std::size_t>(x[j])];
            return p;
        }
        double total = 0.0;
        for (int a = 0; a < cfg.q; ++a) {
            u[filled] = a;
            total += prefix_score(u, filled + 1);
        }
        return total;
    }

    DecodeResult run() const {
        const std::vector<char> frozen = cfg.frozen_mask();
        DecodeResult r;
        r.decisions.assign(cfg.block_length, 0);
        std::vector<int> u(cfg.block_length, 0);
        for (std::size_t i = 0; i < cfg.block_length; ++i) {
            LikelihoodVector post(static_cast<std::size_t>(cfg.q));
            double sum = 0.0;
            for (int a = 0; a < cfg.q; ++a) {
                u[i] = a;
                post[static_cast<std::size_t>(a)] = prefix_score(u, i + 1);
                sum += post[static_cast<std::size_t>(a)];
            }
            for (auto& p : post) p /= sum;
            const int best = static_cast<int>(
                std::max_element(post.begin(), post.end()) - post.begin());
            r.decisions[i] = frozen[i] ? 0 : best;
            u[i] = r.decisions[i];
            r.posteriors.push_back(std::move(post));
        }
        return r;
    }
};

std::vector<LikelihoodVector> indicator_likelihoods(const std::vector<int>& x, int q) {
    std::vector<LikelihoodVector> likes;
    for (int s : x) {
        LikelihoodVector l(static_cast<std::size_t>(q), 1e-12);
        l[static_cast<std::size_t>(s)] = 1.0;
        likes.push_back(std::move(l));
    }
    return likes;
}

}  // namespace

TEST_CASE("single-stage encode applies the kernel to the pair") {
    const CodeConfig cfg = config_for(builtin_kernel("L5a"), 1);
    CHECK(polar_encode({1, 2}, cfg) == std::vector<int>{0, 2});
    CHECK(polar_encode({0, 0}, cfg) == std::vector<int>{0, 0});

    const CodeConfig b = config_for(standard_kernel(2), 1);
    CHECK(polar_encode({1, 1}, b) == std::vector<int>{0, 1});
}

TEST_CASE("q=2 standard encoding equals the Kronecker-power transform") {
    for (int n : {1, 2, 3}) {
        const CodeConfig cfg = config_for(standard_kernel(2), n);
        const std::size_t N = cfg.block_length;
        const auto g = kron_power(n);
        for (std::size_t bits = 0; bits < (1u << N); ++bits) {
            std::vector<int> u(N);
            for (std::size_t i = 0; i < N; ++i) u[i] = static_cast<int>((bits >> i) & 1u);
            std::vector<int> expected(N, 0);
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t i = 0; i < N; ++i) expected[j] ^= u[i] & g[i][j];
            CHECK(polar_encode(u, cfg) == expected);
        }
    }
}

TEST_CASE("encode and inverse round-trip") {
    Rng rng(5);
    for (const char* name : {"L3", "L4", "L5a", "L5b", "L8", "M4", "standard5", "sasoglu8"}) {
        const Kernel k = builtin_kernel(name);
        for (int n : {1, 3, 6}) {
            const CodeConfig cfg = config_for(k, n);
            for (int trial = 0; trial < 20; ++trial) {
                const std::vector<int> u = random_symbols(cfg.q, cfg.block_length, rng);
                CHECK(polar_encode_inverse(polar_encode(u, cfg), cfg) == u);
            }
        }
    }
    // mixed schedule: standard below, L8 at the channel stage
    const CodeConfig mixed = make_code_config(channel_stage_schedule(builtin_kernel("L8"), 5));
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<int> u = random_symbols(8, mixed.block_length, rng);
        CHECK(polar_encode_inverse(polar_encode(u, mixed), mixed) == u);
    }
}

TEST_CASE("encoding is a bijection on small blocks") {
    const CodeConfig cfg = config_for(builtin_kernel("L3"), 2);
    std::vector<std::vector<int>> seen;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) seen.push_back(polar_encode({a, b, c, d}, cfg));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("N=2 SC posteriors match the two-branch formulas") {
    Rng rng(31);
    for (int q : {2, 3, 5}) {
        const Kernel k = q == 5 ? builtin_kernel("L5a") : standard_kernel(q);
        const CodeConfig cfg = config_for(k, 1);
        for (int trial = 0; trial < 40; ++trial) {
            const std::vector<LikelihoodVector> likes{random_likelihood(q, rng),
                                                      random_likelihood(q, rng)};
            const DecodeResult r = polar_decode_sc(likes, cfg);

            LikelihoodVector p0(static_cast<std::size_t>(q), 0.0);
            double s0 = 0.0;
            for (int a = 0; a < q; ++a) {
                for (int b = 0; b < q; ++b)
                    p0[static_cast<std::size_t>(a)] +=
                        likes[0][static_cast<std::size_t>(k(a, b))] *
                        likes[1][static_cast<std::size_t>(b)];
                s0 += p0[static_cast<std::size_t>(a)];
            }
            for (int a = 0; a < q; ++a)
                CHECK(r.posteriors[0][static_cast<std::size_t>(a)] ==
                      doctest::Approx(p0[static_cast<std::size_t>(a)] / s0).epsilon(1e-12));

            const int u0 = r.decisions[0];
            LikelihoodVector p1(static_cast<std::size_t>(q), 0.0);
            double s1 = 0.0;
            for (int b = 0; b < q; ++b) {
                p1[static_cast<std::size_t>(b)] = likes[0][static_cast<std::size_t>(k(u0, b))] *
                                                  likes[1][static_cast<std::size_t>(b)];
                s1 += p1[static_cast<std::size_t>(b)];
            }
            for (int b = 0; b < q; ++b)
                CHECK(r.posteriors[1][static_cast<std::size_t>(b)] ==
                      doctest::Approx(p1[static_cast<std::size_t>(b)] / s1).epsilon(1e-12));
        }
    }
}

TEST_CASE("SC decoding matches exact prefix marginalization on N=4") {
    Rng rng(47);
    struct Case {
        const char* kernel;
        std::vector<int> frozen;
    };
    const std::vector<Case> cases{{"standard2", {}}, {"standard2", {0, 1}},
                                  {"L3", {}},        {"L3", {0}},
                                  {"L5a", {0, 1}},   {"M4", {0}}};
    for (const auto& c : cases) {
        const CodeConfig cfg = config_for(builtin_kernel(c.kernel), 2, c.frozen);
        for (int trial = 0; trial < 15; ++trial) {
            std::vector<LikelihoodVector> likes;
            for (std::size_t j = 0; j < cfg.block_length; ++j)
                likes.push_back(random_likelihood(cfg.q, rng));
            const DecodeResult got = polar_decode_sc(likes, cfg);
            const DecodeResult want = ScOracle{cfg, likes}.run();
            CHECK(got.decisions == want.decisions);
            for (std::size_t i = 0; i < cfg.block_length; ++i)
                for (int a = 0; a < cfg.q; ++a)
                    CHECK(got.posteriors[i][static_cast<std::size_t>(a)] ==
                          doctest::Approx(want.posteriors[i][static_cast<std::size_t>(a)])
                              .epsilon(1e-12));
        }
    }
}

TEST_CASE("noiseless decoding recovers the input exactly") {
    Rng rng(53);
    for (const char* name : {"L5b", "L8", "standard4"}) {
        const CodeConfig cfg = config_for(builtin_kernel(name), 4);
        for (int trial = 0; trial < 10; ++trial) {
            const std::vector<int> u = random_symbols(cfg.q, cfg.block_length, rng);
            const auto likes = indicator_likelihoods(polar_encode(u, cfg), cfg.q);
            CHECK(polar_decode_sc(likes, cfg).decisions == u);
            const std::vector<char> flags = polar_decode_genie(likes, cfg, u);
            CHECK(std::count(flags.begin(), flags.end(), 1) == 0);
        }
    }
}

TEST_CASE("frozen positions are forced to zero") {
    const CodeConfig cfg = config_for(standard_kernel(2), 2, {0, 1});
    std::vector<int> u{0, 0, 1, 0};
    const auto likes = indicator_likelihoods(polar_encode(u, cfg), 2);
    const DecodeResult r = polar_decode_sc(likes, cfg);
    CHECK(r.decisions == u);
    CHECK(r.decisions[0] == 0);
    CHECK(r.decisions[1] == 0);
}

TEST_CASE("genie flags localize a corrupted channel symbol") {
    // with every index unfrozen and one likelihood flipped, at least one
    // flag must rise while the plain decoder also breaks somewhere
    const CodeConfig cfg = config_for(standard_kernel(2), 3);
    const std::vector<int> u{1, 0, 1, 1, 0, 0, 1, 0};
    auto likes = indicator_likelihoods(polar_encode(u, cfg), 2);
    std::swap(likes[3][0], likes[3][1]);
    const std::vector<char> flags = polar_decode_genie(likes, cfg, u);
    CHECK(std::count(flags.begin(), flags.end(), 1) > 0);
}

TEST_CASE("config validation") {
    const KernelSchedule s = uniform_schedule(standard_kernel(3), 2);
    CHECK_THROWS_AS(make_code_config(s, {4}), std::invalid_argument);
    CHECK_THROWS_AS(make_code_config(s, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(make_code_config(s, {1, 1}), std::invalid_argument);
    const CodeConfig cfg = make_code_config(s, {3, 1});
    CHECK(cfg.frozen == std::vector<int>{1, 3});  // stored sorted
    CHECK(cfg.info_count() == 2);
    CHECK(cfg.frozen_mask() == std::vector<char>{0, 1, 0, 1});
}

TEST_CASE("encode rejects out-of-range symbols and bad lengths") {
    const CodeConfig cfg = config_for(standard_kernel(3), 2);
    CHECK_THROWS(polar_encode({0, 1, 2}, cfg));
    CHECK_THROWS(polar_encode({0, 1, 3, 2}, cfg));
}

TEST_CASE("degenerate likelihood vectors are reported") {
    const CodeConfig cfg = config_for(standard_kernel(2), 1);
    const std::vector<LikelihoodVector> likes{{0.0, 0.0}, {0.5, 0.5}};
    CHECK_THROWS_AS(polar_decode_sc(likes, cfg), std::runtime_error);
}

#include "nbpolar/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nbpolar {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_symbols(const std::vector<int>& u, const CodeConfig& cfg) {
    if (u.size() != cfg.block_length)
        throw std::invalid_argument("codec: sequence length " + std::to_string(u.size()) +
                                    " != N=" + std::to_string(cfg.block_length));
    for (int s : u)
        if (s < 0 || s >= cfg.q) throw std::invalid_argument("codec: symbol out of range");
}

void normalize(LikelihoodVector& v, int stage, std::size_t position) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw std::runtime_error("polar_decode: degenerate likelihood vector at stage " +
                                 std::to_string(stage) + ", position " +
                                 std::to_string(position));
    for (double& x : v) x /= sum;
}

// One SC pass over a length-M subproblem. The decision policy is the only
// difference between plain and genie decoding, so both share this walk.
//
// likes: M channel-side vectors for this subproblem.
// base:  global u-index of the first leaf.
// Returns the re-encoded codeword of the decided (or true) symbols.
struct ScWalker {
    const CodeConfig& cfg;
    std::vector<char> frozen_mask;
    // plain mode
    DecodeResult* out = nullptr;
    // genie mode
    const std::vector<int>* true_u = nullptr;
    std::vector<char>* error_flags = nullptr;

    std::vector<int> walk(std::vector<LikelihoodVector> likes, int stage, std::size_t base) {
        const int q = cfg.q;
        if (stage == 0) {
            normalize(likes[0], 0, base);
            int decision = 0;
            if (true_u || !frozen_mask[base]) {
                decision = static_cast<int>(std::max_element(likes[0].begin(), likes[0].end()) -
                                            likes[0].begin());
                // max_element keeps the first of equals: smallest symbol wins ties
            }
            if (out) {
                out->decisions[base] = decision;
                out->posteriors[base] = std::move(likes[0]);
            }
            if (true_u) {
                const int truth = (*true_u)[base];
                (*error_flags)[base] = decision != truth;
                return {truth};
            }
            return {decision};
        }

        const Kernel& f = cfg.schedule.stages[static_cast<std::size_t>(stage - 1)];
        const std::size_t half = likes.size() / 2;

        std::vector<LikelihoodVector> first_branch(half);
        for (std::size_t p = 0; p < half; ++p) {
            const LikelihoodVector& l1 = likes[p];
            const LikelihoodVector& l2 = likes[p + half];
            LikelihoodVector w(static_cast<std::size_t>(q), 0.0);
            for (int a = 0; a < q; ++a) {
                double acc = 0.0;
                for (int b = 0; b < q; ++b)
                    acc += l1[static_cast<std::size_t>(f(a, b))] * l2[static_cast<std::size_t>(b)];
                w[static_cast<std::size_t>(a)] = acc / q;
            }
            normalize(w, stage, base + p);
            first_branch[p] = std::move(w);
        }
        const std::vector<int> a_hat = walk(std::move(first_branch), stage - 1, base);

        std::vector<LikelihoodVector> second_branch(half);
        for (std::size_t p = 0; p < half; ++p) {
            const LikelihoodVector& l1 = likes[p];
            const LikelihoodVector& l2 = likes[p + half];
            const int a = a_hat[p];
            LikelihoodVector w(static_cast<std::size_t>(q));
            for (int b = 0; b < q; ++b)
                w[static_cast<std::size_t>(b)] =
                    l1[static_cast<std::size_t>(f(a, b))] * l2[static_cast<std::size_t>(b)];
            normalize(w, stage, base + half + p);
            second_branch[p] = std::move(w);
        }
        const std::vector<int> b_hat = walk(std::move(second_branch), stage - 1, base + half);

        std::vector<int> x(likes.size());
        for (std::size_t p = 0; p < half; ++p) {
            x[p] = f(a_hat[p], b_hat[p]);
            x[p + half] = b_hat[p];
        }
        return x;
    }
};

void check_likelihoods(const std::vector<LikelihoodVector>& likes, const CodeConfig& cfg) {
    if (likes.size() != cfg.block_length)
        throw std::invalid_argument("polar_decode: expected N likelihood vectors");
    for (const LikelihoodVector& v : likes)
        if (static_cast<int>(v.size()) != cfg.q)
            throw std::invalid_argument("polar_decode: likelihood vector size != q");
}

}  // namespace

std::vector<char> CodeConfig::frozen_mask() const {
    std::vector<char> mask(block_length, 0);
    for (int i : frozen) mask[static_cast<std::size_t>(i)] = 1;
    return mask;
}

void CodeConfig::check() const {
    schedule.check();
    if (q != schedule.q()) throw std::invalid_argument("CodeConfig: q mismatch with schedule");
    if (!is_power_of_two(block_length))
        throw std::invalid_argument("CodeConfig: N must be a power of two");
    if ((std::size_t{1} << schedule.size()) != block_length)
        throw std::invalid_argument("CodeConfig: schedule length != log2(N)");
    std::vector<char> seen(block_length, 0);
    for (int i : frozen) {
        if (i < 0 || static_cast<std::size_t>(i) >= block_length)
            throw std::invalid_argument("CodeConfig: frozen index out of range");
        if (seen[static_cast<std::size_t>(i)])
            throw std::invalid_argument("CodeConfig: duplicate frozen index");
        seen[static_cast<std::size_t>(i)] = 1;
    }
}

CodeConfig make_code_config(const KernelSchedule& schedule, std::vector<int> frozen) {
    CodeConfig cfg;
    cfg.q = schedule.q();
    cfg.block_length = std::size_t{1} << schedule.size();
    cfg.schedule = schedule;
    std::sort(frozen.begin(), frozen.end());
    cfg.frozen = std::move(frozen);
    cfg.check();
    return cfg;
}

std::vector<int> polar_encode(const std::vector<int>& u, const CodeConfig& cfg) {
    check_symbols(u, cfg);
    std::vector<int> x = u;
    const std::size_t n = static_cast<std::size_t>(cfg.stage_count());
    for (std::size_t t = 1; t <= n; ++t) {
        const Kernel& f = cfg.schedule.stages[t - 1];
        const std::size_t block = std::size_t{1} << t;
        const std::size_t half = block >> 1;
        for (std::size_t b0 = 0; b0 < x.size(); b0 += block)
            for (std::size_t p = 0; p < half; ++p)
                x[b0 + p] = f(x[b0 + p], x[b0 + p + half]);
    }
    return x;
}

std::vector<int> polar_encode_inverse(const std::vector<int>& x, const CodeConfig& cfg) {
    check_symbols(x, cfg);
    std::vector<int> u = x;
    for (std::size_t t = static_cast<std::size_t>(cfg.stage_count()); t >= 1; --t) {
        const Kernel& f = cfg.schedule.stages[t - 1];
        const std::size_t block = std::size_t{1} << t;
        const std::size_t half = block >> 1;
        for (std::size_t b0 = 0; b0 < u.size(); b0 += block)
            for (std::size_t p = 0; p < half; ++p)
                u[b0 + p] = f.invert_first(u[b0 + p], u[b0 + p + half]);
    }
    return u;
}

DecodeResult polar_decode_sc(const std::vector<LikelihoodVector>& channel_likelihoods,
                             const CodeConfig& cfg) {
    check_likelihoods(channel_likelihoods, cfg);
    DecodeResult result;
    result.decisions.assign(cfg.block_length, 0);
    result.posteriors.resize(cfg.block_length);
    ScWalker walker{cfg, cfg.frozen_mask(), &result, nullptr, nullptr};
    walker.walk(channel_likelihoods, cfg.stage_count(), 0);
    return result;
}

std::vector<char> polar_decode_genie(const std::vector<LikelihoodVector>& channel_likelihoods,
                                     const CodeConfig& cfg, const std::vector<int>& true_u) {
    check_likelihoods(channel_likelihoods, cfg);
    check_symbols(true_u, cfg);
    std::vector<char> flags(cfg.block_length, 0);
    ScWalker walker{cfg, cfg.frozen_mask(), nullptr, &true_u, &flags};
    walker.walk(channel_likelihoods, cfg.stage_count(), 0);
    return flags;
}

}  // namespace nbpolar

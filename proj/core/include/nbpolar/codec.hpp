#pragma once

#include <cstddef>
#include <vector>

#include "nbpolar/kernel.hpp"

namespace nbpolar {

/// Posterior over symbols at a decoder node: q nonnegative reals, sum 1.
using LikelihoodVector = std::vector<double>;

/// Block code parameters: N = 2^n symbols, per-stage kernels, frozen set.
/// Frozen indices carry the symbol 0, known to the decoder.
struct CodeConfig {
    int q = 0;
    std::size_t block_length = 0;  // N = 2^n
    KernelSchedule schedule;       // n kernels, stage 1 at the inputs
    std::vector<int> frozen;       // sorted, distinct, in 0..N-1

    int stage_count() const { return schedule.size(); }
    std::size_t info_count() const { return block_length - frozen.size(); }
    std::vector<char> frozen_mask() const;
    void check() const;
};

CodeConfig make_code_config(const KernelSchedule& schedule, std::vector<int> frozen = {});

/// n stages applied input-to-channel. At stage t, within each block of
/// 2^t positions, position p in the first half pairs with p + 2^{t-1}:
/// first-half output = f_t(first, second), second-half output = second.
std::vector<int> polar_encode(const std::vector<int>& u, const CodeConfig& cfg);

/// Butterfly inversion, x back to u.
std::vector<int> polar_encode_inverse(const std::vector<int>& x, const CodeConfig& cfg);

struct DecodeResult {
    std::vector<int> decisions;                // length N, frozen positions forced to 0
    std::vector<LikelihoodVector> posteriors;  // per-index leaf posterior
};

/// q-ary successive cancellation. At each butterfly the u1-branch
/// marginalizes u2 with weight 1/q; the u2-branch conditions on the
/// decided symbols. Argmax decisions, ties toward the smaller symbol.
DecodeResult polar_decode_sc(const std::vector<LikelihoodVector>& channel_likelihoods,
                             const CodeConfig& cfg);

/// Genie-aided pass: decisions are computed from posteriors but the
/// recursion continues with the true symbols; every index is treated as
/// unfrozen. Returns decision != truth per index.
std::vector<char> polar_decode_genie(const std::vector<LikelihoodVector>& channel_likelihoods,
                                     const CodeConfig& cfg, const std::vector<int>& true_u);

}  // namespace nbpolar

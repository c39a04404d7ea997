#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nbpolar {

/// A polarizing kernel: a q x q table where entry (u1, u2) = f(u1, u2),
/// invertible in each argument with the other fixed (rows and columns are
/// permutations of 0..q-1). Value type, immutable after validation.
class Kernel {
public:
    Kernel() = default;

    int q() const { return q_; }
    const std::string& label() const { return label_; }

    int operator()(int u1, int u2) const {
        return table_[static_cast<std::size_t>(u1) * q_ + u2];
    }

    /// u1 such that f(u1, u2) = x (column inverse).
    int invert_first(int x, int u2) const {
        return col_inv_[static_cast<std::size_t>(u2) * q_ + x];
    }

    /// u2 such that f(u1, u2) = x (row inverse).
    int invert_second(int u1, int x) const {
        return row_inv_[static_cast<std::size_t>(u1) * q_ + x];
    }

    const std::vector<int>& table() const { return table_; }

    friend Kernel validate_kernel(const std::vector<std::vector<int>>& table,
                                  std::string label);

private:
    int q_ = 0;
    std::string label_;
    std::vector<int> table_;    // row-major, row = u1
    std::vector<int> row_inv_;  // row_inv_[u1*q + x] = u2 with f(u1,u2)=x
    std::vector<int> col_inv_;  // col_inv_[u2*q + x] = u1 with f(u1,u2)=x
};

/// Checks the double-invertibility conditions and builds the kernel.
/// Throws std::invalid_argument naming the first violated row or column.
Kernel validate_kernel(const std::vector<std::vector<int>>& table,
                       std::string label = "");

/// Kernel of type f(u1,u2) = u1 + pi(u2) mod q.
Kernel kernel_from_permutation(int q, const std::vector<int>& pi,
                               std::string label = "");

/// Addition mod q (identity permutation).
Kernel standard_kernel(int q);

/// The permutation kernel with pi(0) = floor(q/2), pi(x) = x-1 for
/// 1 <= x <= floor(q/2), pi(x) = x otherwise.
Kernel sasoglu_kernel(int q);

std::vector<int> sasoglu_permutation(int q);

/// Named kernels: "standard", "sasoglu" (require q), "L3", "L4", "L5a",
/// "L5b", "L8", "M4". Also accepts "standard<q>" / "sasoglu<q>".
Kernel builtin_kernel(const std::string& name, int q = 0);

/// The per-q proposed kernel: L3, L4, L5a, L8.
Kernel proposed_kernel(int q);

/// A proper nontrivial symbol subset closed under f, if one exists.
/// Smallest such subset (size, then lexicographic); enumerates all 2^q
/// subsets, q <= 16.
std::optional<std::vector<int>> subgroup_anomaly(const Kernel& k);

/// True iff every K x K submatrix B_ij = f(a_i, a_j) over distinct
/// symbols a_0..a_{K-1} has at least K+1 distinct entries.
bool distinct_entries_check(const Kernel& k, int subset_size);

/// Per-stage kernels, stage 1 adjacent to the inputs u, stage n adjacent
/// to the channel outputs x.
struct KernelSchedule {
    std::vector<Kernel> stages;

    int q() const { return stages.empty() ? 0 : stages.front().q(); }
    int size() const { return static_cast<int>(stages.size()); }
    void check() const;  // all kernels share the same q
};

/// n copies of the same kernel.
KernelSchedule uniform_schedule(const Kernel& k, int n);

/// Standard everywhere except the channel stage (stage n).
KernelSchedule channel_stage_schedule(const Kernel& channel_stage, int n);

}  // namespace nbpolar

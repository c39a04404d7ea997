#include "nbpolar/kernel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace nbpolar {

namespace {

bool is_permutation_of_range(const std::vector<int>& v, int q) {
    if (static_cast<int>(v.size()) != q) return false;
    std::vector<char> seen(static_cast<std::size_t>(q), 0);
    for (int x : v) {
        if (x < 0 || x >= q || seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
}

}  // namespace

Kernel validate_kernel(const std::vector<std::vector<int>>& table, std::string label) {
    const int q = static_cast<int>(table.size());
    if (q < 2) throw std::invalid_argument("validate_kernel: table must be at least 2x2");
    for (int r = 0; r < q; ++r)
        if (!is_permutation_of_range(table[static_cast<std::size_t>(r)], q))
            throw std::invalid_argument("validate_kernel: row " + std::to_string(r) +
                                        " is not a permutation of 0.." + std::to_string(q - 1));
    for (int c = 0; c < q; ++c) {
        std::vector<int> col(static_cast<std::size_t>(q));
        for (int r = 0; r < q; ++r) col[static_cast<std::size_t>(r)] = table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        if (!is_permutation_of_range(col, q))
            throw std::invalid_argument("validate_kernel: column " + std::to_string(c) +
                                        " is not a permutation of 0.." + std::to_string(q - 1));
    }

    Kernel k;
    k.q_ = q;
    k.label_ = std::move(label);
    k.table_.resize(static_cast<std::size_t>(q) * q);
    k.row_inv_.resize(static_cast<std::size_t>(q) * q);
    k.col_inv_.resize(static_cast<std::size_t>(q) * q);
    for (int u1 = 0; u1 < q; ++u1)
        for (int u2 = 0; u2 < q; ++u2) {
            const int x = table[static_cast<std::size_t>(u1)][static_cast<std::size_t>(u2)];
            k.table_[static_cast<std::size_t>(u1) * q + u2] = x;
            k.row_inv_[static_cast<std::size_t>(u1) * q + x] = u2;
            k.col_inv_[static_cast<std::size_t>(u2) * q + x] = u1;
        }
    return k;
}

Kernel kernel_from_permutation(int q, const std::vector<int>& pi, std::string label) {
    if (!is_permutation_of_range(pi, q))
        throw std::invalid_argument("kernel_from_permutation: pi is not a permutation of 0.." +
                                    std::to_string(q - 1));
    std::vector<std::vector<int>> table(static_cast<std::size_t>(q),
                                        std::vector<int>(static_cast<std::size_t>(q)));
    for (int u1 = 0; u1 < q; ++u1)
        for (int u2 = 0; u2 < q; ++u2)
            table[static_cast<std::size_t>(u1)][static_cast<std::size_t>(u2)] =
                (u1 + pi[static_cast<std::size_t>(u2)]) % q;
    return validate_kernel(table, std::move(label));
}

Kernel standard_kernel(int q) {
    std::vector<int> id(static_cast<std::size_t>(q));
    std::iota(id.begin(), id.end(), 0);
    return kernel_from_permutation(q, id, "standard" + std::to_string(q));
}

std::vector<int> sasoglu_permutation(int q) {
    if (q < 2) throw std::invalid_argument("sasoglu_permutation: q must be >= 2");
    std::vector<int> pi(static_cast<std::size_t>(q));
    const int h = q / 2;
    pi[0] = h;
    for (int x = 1; x <= h; ++x) pi[static_cast<std::size_t>(x)] = x - 1;
    for (int x = h + 1; x < q; ++x) pi[static_cast<std::size_t>(x)] = x;
    return pi;
}

Kernel sasoglu_kernel(int q) {
    return kernel_from_permutation(q, sasoglu_permutation(q), "sasoglu" + std::to_string(q));
}

Kernel builtin_kernel(const std::string& name, int q) {
    if (name == "L3") return kernel_from_permutation(3, {0, 2, 1}, "L3");
    if (name == "L4") return kernel_from_permutation(4, {0, 2, 1, 3}, "L4");
    if (name == "L5a") return kernel_from_permutation(5, {0, 2, 4, 1, 3}, "L5a");
    if (name == "L5b") return kernel_from_permutation(5, {0, 3, 1, 4, 2}, "L5b");
    if (name == "L8") return kernel_from_permutation(8, {0, 3, 6, 1, 4, 7, 2, 5}, "L8");
    if (name == "M4") {
        // Row index is u1, column index is u2.
        Kernel k = validate_kernel({{0, 2, 1, 3}, {1, 3, 0, 2}, {2, 0, 3, 1}, {3, 1, 2, 0}}, "M4");
        return k;
    }
    auto with_q = [&](const std::string& prefix) -> int {
        if (name.size() > prefix.size()) return std::stoi(name.substr(prefix.size()));
        if (q >= 2) return q;
        throw std::invalid_argument("builtin_kernel: '" + name + "' needs an alphabet size");
    };
    if (name.rfind("standard", 0) == 0) return standard_kernel(with_q("standard"));
    if (name.rfind("sasoglu", 0) == 0) return sasoglu_kernel(with_q("sasoglu"));
    throw std::invalid_argument("builtin_kernel: unknown kernel '" + name + "'");
}

Kernel proposed_kernel(int q) {
    switch (q) {
        case 3: return builtin_kernel("L3");
        case 4: return builtin_kernel("L4");
        case 5: return builtin_kernel("L5a");
        case 8: return builtin_kernel("L8");
        default:
            throw std::invalid_argument("proposed_kernel: no proposed kernel for q=" +
                                        std::to_string(q));
    }
}

std::optional<std::vector<int>> subgroup_anomaly(const Kernel& k) {
    const int q = k.q();
    if (q > 16) throw std::invalid_argument("subgroup_anomaly: q > 16 not supported");
    // Subsets ordered by size, then lexicographically by member list.
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < (1u << q); ++m) {
        const int sz = std::popcount(m);
        if (sz > 1 && sz < q) masks.push_back(m);
    }
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int sa = std::popcount(a), sb = std::popcount(b);
        if (sa != sb) return sa < sb;
        return a < b;  // lower bit = lower symbol, so smaller mask is lexicographically first
    });
    for (unsigned m : masks) {
        bool closed = true;
        for (int a = 0; a < q && closed; ++a) {
            if (!(m >> a & 1u)) continue;
            for (int b = 0; b < q && closed; ++b) {
                if (!(m >> b & 1u)) continue;
                if (!(m >> k(a, b) & 1u)) closed = false;
            }
        }
        if (closed) {
            std::vector<int> subset;
            for (int s = 0; s < q; ++s)
                if (m >> s & 1u) subset.push_back(s);
            return subset;
        }
    }
    return std::nullopt;
}

bool distinct_entries_check(const Kernel& k, int subset_size) {
    const int q = k.q();
    if (subset_size < 2 || subset_size > q - 1)
        throw std::invalid_argument("distinct_entries_check: need 2 <= K <= q-1");
    std::vector<int> pick(static_cast<std::size_t>(subset_size));
    // Enumerate all C(q, K) sorted subsets.
    std::vector<char> used(static_cast<std::size_t>(q), 0);
    auto rec = [&](auto&& self, int depth, int start) -> bool {
        if (depth == subset_size) {
            std::fill(used.begin(), used.end(), 0);
            int distinct = 0;
            for (int a : pick)
                for (int b : pick) {
                    const int x = k(a, b);
                    if (!used[static_cast<std::size_t>(x)]) {
                        used[static_cast<std::size_t>(x)] = 1;
                        ++distinct;
                    }
                }
            return distinct >= subset_size + 1;
        }
        for (int s = start; s < q; ++s) {
            pick[static_cast<std::size_t>(depth)] = s;
            if (!self(self, depth + 1, s + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0, 0);
}

void KernelSchedule::check() const {
    if (stages.empty()) throw std::invalid_argument("KernelSchedule: empty");
    for (const Kernel& k : stages)
        if (k.q() != q())
            throw std::invalid_argument("KernelSchedule: kernels disagree on alphabet size");
}

KernelSchedule uniform_schedule(const Kernel& k, int n) {
    KernelSchedule s;
    s.stages.assign(static_cast<std::size_t>(n), k);
    s.check();
    return s;
}

KernelSchedule channel_stage_schedule(const Kernel& channel_stage, int n) {
    KernelSchedule s;
    s.stages.assign(static_cast<std::size_t>(n), standard_kernel(channel_stage.q()));
    s.stages.back() = channel_stage;
    s.check();
    return s;
}

}  // namespace nbpolar

#pragma once

// Sweeps that compare the kernel enumeration against brute force.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dickson/dickson.hpp"
#include "dickson/group.hpp"
#include "dickson/oracle.hpp"

namespace dickson {

struct Mismatch {
    u64 n = 0;
    std::string what;
};

struct SweepSummary {
    u64 checked = 0;
    std::optional<Mismatch> first_failure;

    bool ok() const { return !first_failure; }
};

/// For every n in [2, max_n]: enumerate_kernel == kernel_oracle and
/// group_order == group_order_oracle == distinct_maps, every induced map
/// bijective. Stops at the first mismatch.
inline SweepSummary verify_oracle_equivalence(u64 max_n, u64 cap = oracle::kDefaultCap) {
    SweepSummary s;
    for (u64 n = 2; n <= max_n; ++n) {
        const auto table = oracle::build_table(n, cap);
        const auto kr = enumerate_kernel(n);
        const auto brute_kernel = oracle::identity_exponents(table);
        const auto report = group_order(n);
        const u64 maps = oracle::distinct_maps(table);
        ++s.checked;
        if (kr.kernel != brute_kernel) {
            s.first_failure = Mismatch{n, "kernel differs from brute force"};
            return s;
        }
        if (report.order != maps) {
            s.first_failure = Mismatch{n, "|G_n| = " + std::to_string(report.order) + " but " +
                                              std::to_string(maps) + " distinct maps"};
            return s;
        }
        if (report.phi_w != table.size()) {
            s.first_failure = Mismatch{n, "phi(w(n)) differs from the number of units"};
            return s;
        }
        if (!oracle::all_images_bijective(table)) {
            s.first_failure = Mismatch{n, "an induced map is not a permutation"};
            return s;
        }
    }
    return s;
}

/// Random (k, a, n, u) with k <= max_k, n in [1, max_n], a in {0, 1, n-1}:
/// eval_fast must equal eval_recurrence.
inline SweepSummary verify_evaluators(u64 samples, u64 seed, u64 max_k = 2000, u64 max_n = 500) {
    SweepSummary s;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> kd(0, max_k), nd(1, max_n);
    for (u64 i = 0; i < samples; ++i) {
        const u64 n = nd(rng);
        const u64 k = kd(rng);
        const u64 u = std::uniform_int_distribution<u64>(0, n - 1)(rng);
        const i64 choices[] = {0, 1, static_cast<i64>(n) - 1};
        const i64 a = choices[rng() % 3];
        ++s.checked;
        if (eval_fast({k, a, n}, u) != eval_recurrence({k, a, n}, u)) {
            s.first_failure = Mismatch{n, "eval_fast != eval_recurrence at k=" + std::to_string(k) +
                                              " a=" + std::to_string(a) + " u=" + std::to_string(u)};
            return s;
        }
    }
    return s;
}

}  // namespace dickson

#pragma once

// When does D_k(x, a) permute Z_n?  Two closed criteria (gcd with v(n) or
// with the sharper w(n)) and a brute-force injectivity check.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dickson/dickson.hpp"
#include "dickson/errors.hpp"
#include "dickson/numth.hpp"

namespace dickson {

struct ModuliProfile {
    u64 n = 0;
    unsigned e = 0;           // exponent of 2 in n
    std::optional<u64> l0;    // present iff e >= 1
    std::vector<u64> ls;      // one per odd prime power, ascending primes
    u64 w = 0;
    u64 v = 0;
};

/// p^(e-1) (p^2 - 1) / 2 for odd p; the 2-power term is handled separately.
inline u64 odd_component_modulus(u64 p, unsigned e) {
    // (p^2 - 1)/2 = (p-1)/2 * (p+1)
    return checked_mul(checked_pow(p, e - 1), checked_mul((p - 1) / 2, p + 1));
}

/// 3*2^(e-1) for e < 3, 3*2^(e-2) for e >= 3.
inline u64 two_component_modulus(unsigned e) {
    if (e == 0) throw std::invalid_argument("two_component_modulus: e must be >= 1");
    return checked_mul(3, checked_pow(2, e < 3 ? e - 1 : e - 2));
}

inline ModuliProfile profile(const Factorization& f) {
    if (f.value < 2) throw std::invalid_argument("profile: n must be >= 2");
    ModuliProfile out;
    out.n = f.value;
    std::vector<u64> w_terms;
    std::vector<u64> v_terms;
    for (const auto& [p, e] : f.factors) {
        // p^(e-1) (p^2 - 1), overflow-checked
        v_terms.push_back(checked_mul(checked_pow(p, e - 1), checked_mul(p - 1, p + 1)));
        if (p == 2) {
            out.e = e;
            out.l0 = two_component_modulus(e);
            w_terms.push_back(*out.l0);
        } else {
            out.ls.push_back(odd_component_modulus(p, e));
            w_terms.push_back(out.ls.back());
        }
    }
    out.w = lcm_list(w_terms);
    out.v = lcm_list(v_terms);
    return out;
}

inline ModuliProfile profile(u64 n) { return profile(factorize(n)); }

/// D_k(x, a) with a a unit mod n permutes Z_n iff gcd(k, w(n)) = 1.
inline bool is_perm_w(u64 k, const ModuliProfile& p) { return std::gcd(k, p.w) == 1; }

inline bool is_perm_w(u64 k, const Factorization& f) {
    if (f.value == 1) return true;
    return is_perm_w(k, profile(f));
}

/// Classical criterion gcd(k, v(n)) = 1.
inline bool is_perm_v(u64 k, const ModuliProfile& p) { return std::gcd(k, p.v) == 1; }

inline bool is_perm_v(u64 k, const Factorization& f) {
    if (f.value == 1) return true;
    return is_perm_v(k, profile(f));
}

inline constexpr u64 kDefaultBruteCap = 5000;

/// Evaluates D_k(., a) on all of Z_n and reports injectivity.
inline bool is_perm_brute(u64 k, i64 a, u64 n, u64 cap = kDefaultBruteCap) {
    if (n == 0) throw std::invalid_argument("modulus must be >= 1");
    if (n > cap)
        throw CapExceeded("brute-force permutation check: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    std::vector<bool> seen(n, false);
    for (u64 u = 0; u < n; ++u) {
        const u64 img = eval_fast({k, a, n}, u);
        if (seen[img]) return false;
        seen[img] = true;
    }
    return true;
}

/// Brute-force permutation flags for every k in [0, k_max], from one pass of
/// the recurrence over all of Z_n. flags[k] == is_perm_brute(k, a, n).
inline std::vector<bool> perm_flags_brute(i64 a, u64 n, u64 k_max, u64 cap = kDefaultBruteCap) {
    if (n == 0) throw std::invalid_argument("modulus must be >= 1");
    if (n > cap)
        throw CapExceeded("brute-force permutation sweep: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    std::vector<bool> flags(k_max + 1);
    with_recurrence_sweep(n, a, [&](auto& sweep) {
        std::vector<u64> scratch(n, 0);
        for (u64 k = 0;; ++k) {
            flags[k] = sweep.is_injective(scratch);
            if (k == k_max) break;
            sweep.advance();
        }
    });
    return flags;
}

}  // namespace dickson

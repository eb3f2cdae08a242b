#pragma once

// Exact 64-bit integer primitives: gcd family, modular arithmetic,
// primality and factorization.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dickson/errors.hpp"

namespace dickson {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct PrimePower {
    u64 prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = prod prime^exponent, primes strictly increasing.
struct Factorization {
    u64 value = 1;
    std::vector<PrimePower> factors;

    bool is_prime_power() const { return factors.size() == 1; }
    unsigned exponent_of(u64 p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Signed integers including the 128-bit extension type.
template <typename T>
concept SignedWord = std::signed_integral<T> || std::same_as<T, __int128>;

template <SignedWord T>
struct ExtGcd {
    T g;
    T s;
    T t;
};

/// Returns g = gcd(|a|,|b|) >= 0 together with s, t such that a*s + b*t = g.
template <SignedWord T>
constexpr ExtGcd<T> ext_gcd(T a, T b) {
    T old_r = a, r = b;
    T old_s = 1, s = 0;
    T old_t = 0, t = 1;
    while (r != 0) {
        const T q = old_r / r;
        T tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("product " + std::to_string(a) + " * " + std::to_string(b) +
                            " exceeds 64 bits");
    return out;
}

inline u64 checked_add(u64 a, u64 b) {
    u64 out;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("sum " + std::to_string(a) + " + " + std::to_string(b) +
                            " exceeds 64 bits");
    return out;
}

inline u64 checked_pow(u64 base, unsigned exp) {
    u64 out = 1;
    for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

inline u64 lcm_checked(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

/// Least common multiple of a non-empty list of positive integers.
/// Throws OverflowError rather than wrapping.
inline u64 lcm_list(std::span<const u64> ms) {
    if (ms.empty()) throw std::invalid_argument("lcm_list: empty list");
    u64 acc = 1;
    for (u64 m : ms) {
        if (m == 0) throw std::invalid_argument("lcm_list: entries must be >= 1");
        acc = lcm_checked(acc, m);
    }
    return acc;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    // a, b < m
    const u64 r = a + b;
    return (r < a || r >= m) ? r - m : r;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Canonical representative of a signed integer in [0, m).
inline u64 reduce_signed(i64 a, u64 m) {
    if (a >= 0) return static_cast<u64>(a) % m;
    // magnitude of INT64_MIN is representable in u64
    const u64 mag = static_cast<u64>(-(a + 1)) + 1;
    const u64 r = mag % m;
    return r == 0 ? 0 : m - r;
}

/// Inverse of a modulo m, or 0 when gcd(a, m) != 1 (m >= 2).
inline u64 inverse_mod(u64 a, u64 m) {
    // extended Euclid on u128-safe signed values
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        __int128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) return 0;
    old_s %= static_cast<__int128>(m);
    if (old_s < 0) old_s += m;
    return static_cast<u64>(old_s);
}

namespace detail {

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

inline u64 pollard_brent(u64 n, u64 c) {
    auto f = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 block = 128;
    u64 r = 1;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            const u64 lim = std::min(block, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += block;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

}  // namespace detail

/// Deterministic for every 64-bit input (fixed witness set).
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    const auto s = static_cast<unsigned>(std::countr_zero(d));
    d >>= s;
    for (u64 a : small)
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

namespace detail {

inline void split_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (u64 c = 1;; ++c) {
        const u64 d = pollard_brent(n, c);
        if (d != n) {
            split_large(d, out);
            split_large(n / d, out);
            return;
        }
    }
}

}  // namespace detail

inline constexpr u64 kTrialDivisionLimit = 1'000'000;

/// Trial division up to 10^6, then Pollard-Brent on the cofactor.
inline Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f{n, {}};
    auto take = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    take(2);
    for (u64 p = 3; p <= kTrialDivisionLimit && p * p <= n; p += 2) take(p);
    if (n > 1) {
        std::vector<u64> rest;
        detail::split_large(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            f.factors.push_back({rest[i], static_cast<unsigned>(j - i)});
            i = j;
        }
    }
    return f;
}

inline u64 euler_phi(const Factorization& f) {
    u64 phi = 1;
    for (const auto& [p, e] : f.factors) phi *= checked_pow(p, e - 1) * (p - 1);
    return phi;
}

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

}  // namespace dickson

#pragma once

// Dickson polynomials of the first kind, D_k(x, a):
//   D_0 = 2, D_1 = x, D_k = x D_{k-1} - a D_{k-2}.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dickson/errors.hpp"
#include "dickson/numth.hpp"

namespace dickson {

struct DicksonParams {
    u64 k = 0;
    i64 a = 1;
    u64 n = 1;
};

struct DicksonTerm {
    unsigned power = 0;
    i64 coefficient = 0;

    friend bool operator==(const DicksonTerm&, const DicksonTerm&) = default;
};

/// Exact coefficient form; powers k, k-2, k-4, ... in decreasing order.
struct DicksonCoeffs {
    unsigned k = 0;
    std::vector<DicksonTerm> terms;

    /// Evaluates at u modulo n.
    u64 evaluate(u64 u, u64 n) const {
        if (n == 0) throw std::invalid_argument("modulus must be >= 1");
        u %= n;
        u64 acc = 0;
        for (const auto& t : terms) {
            const u64 c = reduce_signed(t.coefficient, n);
            acc = addmod(acc, mulmod(c, powmod(u, t.power, n), n), n);
        }
        return acc % n;
    }
};

inline constexpr unsigned kMaxExactDegree = 64;

namespace detail {

inline const std::array<std::array<u64, kMaxExactDegree + 1>, kMaxExactDegree + 1>& binomials() {
    static const auto table = [] {
        std::array<std::array<u64, kMaxExactDegree + 1>, kMaxExactDegree + 1> c{};
        for (unsigned i = 0; i <= kMaxExactDegree; ++i) {
            c[i][0] = 1;
            for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j < i ? c[i - 1][j] : 0);
        }
        return c;
    }();
    return table;
}

inline i64 checked_mul_signed(i64 a, i64 b) {
    i64 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("Dickson coefficient exceeds 64 bits");
    return out;
}

}  // namespace detail

/// Coefficients from the closed sum
///   D_k(x,a) = sum_j k/(k-j) C(k-j, j) (-a)^j x^(k-2j),
/// using k/(k-j) C(k-j,j) = C(k-j,j) + C(k-j-1,j-1) to stay in integers.
inline DicksonCoeffs coeffs(unsigned k, i64 a) {
    if (k > kMaxExactDegree)
        throw DegreeTooLarge("exact coefficients are limited to k <= " +
                             std::to_string(kMaxExactDegree) + ", got " + std::to_string(k));
    DicksonCoeffs out{k, {}};
    if (k == 0) {
        out.terms.push_back({0, 2});
        return out;
    }
    const auto& c = detail::binomials();
    i64 neg_a_pow = 1;
    for (unsigned j = 0; 2 * j <= k; ++j) {
        if (j > 0) neg_a_pow = detail::checked_mul_signed(neg_a_pow, -a);
        const u64 base = c[k - j][j] + (j > 0 ? c[k - j - 1][j - 1] : 0);
        if (base > static_cast<u64>(INT64_MAX)) throw OverflowError("Dickson coefficient exceeds 64 bits");
        const i64 coef = detail::checked_mul_signed(static_cast<i64>(base), neg_a_pow);
        if (coef != 0) out.terms.push_back({k - 2 * j, coef});
    }
    return out;
}

/// Reference evaluator: the three-term recurrence, O(k) steps.
inline u64 eval_recurrence(const DicksonParams& p, u64 u) {
    if (p.n == 0) throw std::invalid_argument("modulus must be >= 1");
    const u64 n = p.n;
    const u64 a = reduce_signed(p.a, n);
    u %= n;
    u64 prev = 2 % n;  // D_0
    if (p.k == 0) return prev;
    u64 cur = u;  // D_1
    for (u64 i = 1; i < p.k; ++i) {
        const u64 next = submod(mulmod(u, cur, n), mulmod(a, prev, n), n);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// O(log k) evaluation by the doubling identities
///   D_2m   = D_m^2 - 2 a^m
///   D_2m+1 = D_m D_m+1 - a^m x
inline u64 eval_fast(const DicksonParams& p, u64 u) {
    if (p.n == 0) throw std::invalid_argument("modulus must be >= 1");
    const u64 n = p.n;
    if (n == 1) return 0;
    const u64 a = reduce_signed(p.a, n);
    u %= n;
    if (p.k == 0) return 2 % n;

    u64 dm = 2 % n;  // D_m
    u64 dm1 = u;     // D_{m+1}
    u64 am = 1;      // a^m
    for (int bit = 63 - std::countl_zero(p.k); bit >= 0; --bit) {
        const u64 cross = submod(mulmod(dm, dm1, n), mulmod(am, u, n), n);  // D_2m+1
        if ((p.k >> bit) & 1) {
            const u64 am1 = mulmod(am, a, n);
            const u64 sq = submod(mulmod(dm1, dm1, n), addmod(am1, am1, n), n);  // D_2m+2
            dm = cross;
            dm1 = sq;
            am = mulmod(am, am1, n);
        } else {
            const u64 sq = submod(mulmod(dm, dm, n), addmod(am, am, n), n);  // D_2m
            dm = sq;
            dm1 = cross;
            am = mulmod(am, am, n);
        }
    }
    return dm;
}

/// Checks D_{mk}(u,a) == D_m(D_k(u,a), a^k) mod n.
inline bool compose_check(u64 m, u64 k, i64 a, u64 n, u64 u) {
    if (n == 0) throw std::invalid_argument("modulus must be >= 1");
    const u64 mk = checked_mul(m, k);
    const u64 lhs = eval_fast({mk, a, n}, u);
    const u64 inner = eval_fast({k, a, n}, u);
    const u64 ak = powmod(reduce_signed(a, n), k, n);
    // a^k is already reduced, so the i64 conversion only matters for n > 2^63
    if (ak > static_cast<u64>(INT64_MAX)) throw OverflowError("a^k mod n does not fit in i64");
    const u64 rhs = eval_fast({m, static_cast<i64>(ak), n}, inner);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Vectorised recurrence: D_k(u) for every u in Z_n, advancing k by one.
// Used by the brute-force oracles, which need every k in a range anyway.

namespace detail {

/// x mod n for x < 2^24 via a float reciprocal and one correction step.
struct SmallReducer {
    using word = std::uint32_t;
    static constexpr u64 kMaxModulus = 4096;

    explicit SmallReducer(u64 n) : n_(static_cast<std::int32_t>(n)), inv_(1.0f / static_cast<float>(n)) {}

    word operator()(word x) const {
        const auto q = static_cast<std::int32_t>(static_cast<float>(x) * inv_);
        std::int32_t r = static_cast<std::int32_t>(x) - q * n_;
        r += (r < 0) ? n_ : 0;
        r -= (r >= n_) ? n_ : 0;
        return static_cast<word>(r);
    }
    // u*v - a*w  with all inputs reduced
    void step(std::span<const word> us, std::span<const word> cur, std::span<word> prev_to_next,
              word a) const {
        const auto n = static_cast<word>(n_);
        const std::size_t len = us.size();
        if (a == 1) {
            for (std::size_t i = 0; i < len; ++i)
                prev_to_next[i] = (*this)(us[i] * cur[i] + (n - prev_to_next[i]));
        } else {
            for (std::size_t i = 0; i < len; ++i) {
                const word ap = (*this)(a * prev_to_next[i]);
                prev_to_next[i] = (*this)(us[i] * cur[i] + (n - ap));
            }
        }
    }

    std::int32_t n_;
    float inv_;
};

struct WideReducer {
    using word = u64;

    explicit WideReducer(u64 n) : n_(n) {}

    void step(std::span<const word> us, std::span<const word> cur, std::span<word> prev_to_next,
              word a) const {
        for (std::size_t i = 0; i < us.size(); ++i)
            prev_to_next[i] = submod(mulmod(us[i], cur[i], n_), mulmod(a, prev_to_next[i], n_), n_);
    }

    u64 n_;
};

}  // namespace detail

/// Holds (D_{k-1}(u), D_k(u)) for all u in Z_n and steps k -> k+1 with the
/// three-term recurrence. Starts at k = 0.
template <typename Reducer>
class BasicRecurrenceSweep {
public:
    using word = typename Reducer::word;
    using reducer_type = Reducer;

    BasicRecurrenceSweep(u64 n, i64 a)
        : n_(n), a_(static_cast<word>(reduce_signed(a, n))), reducer_(n), us_(n), prev_(n), cur_(n) {
        for (u64 u = 0; u < n; ++u) us_[u] = static_cast<word>(u);
        std::fill(cur_.begin(), cur_.end(), static_cast<word>(2 % n));
    }

    u64 modulus() const { return n_; }
    u64 k() const { return k_; }
    std::span<const word> values() const { return cur_; }

    void advance() {
        if (k_ == 0) {
            prev_.swap(cur_);
            cur_ = us_;
        } else {
            reducer_.step(us_, cur_, prev_, a_);
            prev_.swap(cur_);
        }
        ++k_;
    }

    /// Values are pairwise distinct. `scratch` must hold n zero-initialised
    /// entries when first used with this sweep; it works as a stamp array and
    /// need not be cleared between steps.
    bool is_injective(std::vector<u64>& scratch) const {
        const u64 stamp = k_ + 1;
        for (word v : cur_) {
            if (scratch[v] == stamp) return false;
            scratch[v] = stamp;
        }
        return true;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < cur_.size(); ++i)
            if (cur_[i] != us_[i]) return false;
        return true;
    }

private:
    u64 n_;
    word a_;
    Reducer reducer_;
    u64 k_ = 0;
    std::vector<word> us_;
    std::vector<word> prev_;
    std::vector<word> cur_;
};

using SmallRecurrenceSweep = BasicRecurrenceSweep<detail::SmallReducer>;
using WideRecurrenceSweep = BasicRecurrenceSweep<detail::WideReducer>;

/// Calls fn with the sweep type suited to n.
template <typename Fn>
decltype(auto) with_recurrence_sweep(u64 n, i64 a, Fn&& fn) {
    if (n == 0) throw std::invalid_argument("modulus must be >= 1");
    if (n <= detail::SmallReducer::kMaxModulus) {
        SmallRecurrenceSweep sweep(n, a);
        return fn(sweep);
    }
    WideRecurrenceSweep sweep(n, a);
    return fn(sweep);
}

}  // namespace dickson

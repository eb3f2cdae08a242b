#pragma once

#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "dickson/numth.hpp"

namespace dickson {

/// x = residue (mod modulus), residue kept in [0, modulus).
class Congruence {
public:
    Congruence(i64 residue, u64 modulus) : modulus_(modulus) {
        if (modulus < 2)
            throw std::invalid_argument("congruence modulus must be >= 2, got " + std::to_string(modulus));
        residue_ = reduce_signed(residue, modulus);
    }

    static Congruence canonical(u64 residue, u64 modulus) {
        Congruence c(0, modulus);
        c.residue_ = residue % modulus;
        return c;
    }

    u64 residue() const { return residue_; }
    u64 modulus() const { return modulus_; }

    friend bool operator==(const Congruence&, const Congruence&) = default;

private:
    u64 residue_ = 0;
    u64 modulus_ = 2;
};

struct CongruenceSolution {
    u64 residue = 0;
    u64 modulus = 1;

    bool satisfies(const Congruence& c) const { return residue % c.modulus() == c.residue(); }
    friend bool operator==(const CongruenceSolution&, const CongruenceSolution&) = default;
};

/// Solves x = a (mod p), x = b (mod q) for arbitrary p, q.
///
/// With g = gcd(p, q) the system is solvable iff g | (a - b). Taking
/// p s + q t = g, the solution is x = a - p s (a - b)/g, unique mod lcm(p, q).
/// Returns std::nullopt when unsolvable; throws OverflowError if the lcm does
/// not fit.
inline std::optional<CongruenceSolution> solve_pair(const Congruence& c1, const Congruence& c2) {
    const u64 p = c1.modulus(), q = c2.modulus();
    const u64 a = c1.residue(), b = c2.residue();
    const auto [g_signed, s, t] = ext_gcd(static_cast<__int128>(p), static_cast<__int128>(q));
    const auto g = static_cast<u64>(g_signed);
    const u64 diff_mod_g = submod(a % g, b % g, g);
    if (diff_mod_g != 0) return std::nullopt;

    const u64 l = lcm_checked(p, q);
    const u64 q_over_g = q / g;
    // x = a - p * ((s * (a-b)/g) mod q/g)   (mod l)
    const __int128 d = (static_cast<__int128>(a) - static_cast<__int128>(b)) / static_cast<__int128>(g);
    __int128 step = (s % q_over_g) * (d % q_over_g) % q_over_g;
    if (step < 0) step += q_over_g;
    const u64 offset = static_cast<u64>(static_cast<u128>(p) * static_cast<u64>(step) % l);
    return CongruenceSolution{submod(a % l, offset, l), l};
}

/// Left fold of solve_pair over the list.
inline std::optional<CongruenceSolution> solve_chain(std::span<const Congruence> cs) {
    if (cs.empty()) throw std::invalid_argument("solve_chain: empty congruence list");
    CongruenceSolution acc{cs.front().residue(), cs.front().modulus()};
    for (std::size_t i = 1; i < cs.size(); ++i) {
        const auto next = solve_pair(Congruence::canonical(acc.residue, acc.modulus), cs[i]);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

}  // namespace dickson

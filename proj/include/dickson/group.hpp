#pragma once

// The group G_n of permutations of Z_n induced by D_k(x, 1), through the
// epimorphism Z*_{w(n)} -> G_n and its kernel K_n.
//
// K_n is the set of k mod w(n) that reduce into the per-prime-power kernel
// K_{p^e} modulo every component modulus l_i. Enumerating it means solving
// one congruence system per residue tuple; the solution map from solvable
// tuples to K_n is a bijection.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dickson/congruence.hpp"
#include "dickson/criteria.hpp"
#include "dickson/errors.hpp"
#include "dickson/numth.hpp"
#include "dickson/oracle.hpp"

namespace dickson {

/// K_{p^e} as residues mod its component modulus, in the order 1, -1, p, -p.
struct KernelComponent {
    PrimePower prime_power;
    u64 modulus = 0;
    std::vector<u64> elements;

    bool contains(u64 r) const {
        return std::find(elements.begin(), elements.end(), r % modulus) != elements.end();
    }
};

struct KernelResult {
    u64 n = 0;
    ModuliProfile profile;
    std::vector<KernelComponent> components;
    std::vector<u64> kernel;                          // ascending, residues mod w(n)
    std::map<u64, std::vector<u64>> witnesses;        // k -> solving tuple
    u64 tuples_total = 0;                             // size of the cartesian product
};

enum class OrderMethod { trivial, closed_form, kernel_enum, oracle };

inline std::string_view to_string(OrderMethod m) {
    switch (m) {
        case OrderMethod::trivial: return "trivial";
        case OrderMethod::closed_form: return "closed_form";
        case OrderMethod::kernel_enum: return "kernel_enum";
        case OrderMethod::oracle: return "oracle";
    }
    return "unknown";
}

struct GroupOrderReport {
    u64 n = 1;
    u64 w = 1;
    u64 phi_w = 1;
    u64 kernel_size = 1;
    u64 order = 1;
    OrderMethod method = OrderMethod::trivial;

    friend bool operator==(const GroupOrderReport&, const GroupOrderReport&) = default;
};

inline GroupOrderReport trivial_report() { return {}; }

inline KernelComponent kernel_component(u64 p, unsigned e) {
    if (e == 0) throw std::invalid_argument("kernel_component: exponent must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("kernel_component: " + std::to_string(p) + " is not prime");
    KernelComponent c{{p, e}, p == 2 ? two_component_modulus(e) : odd_component_modulus(p, e), {}};
    const u64 l = c.modulus;
    c.elements = {1, l - 1};
    if (p >= 5 && e == 1) {
        const u64 pr = p % l;
        c.elements.push_back(pr);
        c.elements.push_back(l - pr);
    }
    for (std::size_t i = 0; i < c.elements.size(); ++i)
        for (std::size_t j = i + 1; j < c.elements.size(); ++j)
            if (c.elements[i] == c.elements[j])
                throw InternalError("kernel component for " + std::to_string(p) + "^" + std::to_string(e) +
                                    " has coinciding elements");
    return c;
}

inline std::vector<KernelComponent> kernel_components(const Factorization& f) {
    std::vector<KernelComponent> out;
    out.reserve(f.factors.size());
    for (const auto& [p, e] : f.factors) out.push_back(kernel_component(p, e));
    return out;
}

/// Walks every residue tuple in the product of kernel components (first
/// component outermost) and solves its congruence system. A prefix with no
/// solution prunes every tuple that extends it.
inline KernelResult enumerate_kernel(const Factorization& f) {
    if (f.value < 2) throw std::invalid_argument("enumerate_kernel: n must be >= 2");
    KernelResult res;
    res.n = f.value;
    res.profile = profile(f);
    res.components = kernel_components(f);
    const auto& comps = res.components;
    const std::size_t m = comps.size();

    res.tuples_total = 1;
    for (const auto& c : comps) res.tuples_total = checked_mul(res.tuples_total, c.elements.size());

    std::vector<std::size_t> idx(m, 0);
    std::vector<CongruenceSolution> prefix(m);
    std::size_t from = 0;
    for (;;) {
        std::size_t fail_at = m;
        for (std::size_t i = from; i < m; ++i) {
            const auto c = Congruence::canonical(comps[i].elements[idx[i]], comps[i].modulus);
            if (i == 0) {
                prefix[0] = {c.residue(), c.modulus()};
                continue;
            }
            const auto s = solve_pair(Congruence::canonical(prefix[i - 1].residue, prefix[i - 1].modulus), c);
            if (!s) {
                fail_at = i;
                break;
            }
            prefix[i] = *s;
        }
        if (fail_at == m) {
            const auto& sol = prefix[m - 1];
            if (sol.modulus != res.profile.w)
                throw InternalError("solution modulus " + std::to_string(sol.modulus) + " differs from w(n) = " +
                                    std::to_string(res.profile.w));
            std::vector<u64> tuple(m);
            for (std::size_t i = 0; i < m; ++i) tuple[i] = comps[i].elements[idx[i]];
            if (!res.witnesses.emplace(sol.residue, std::move(tuple)).second)
                throw InternalError("two residue tuples solve to the same k = " + std::to_string(sol.residue) +
                                    " for n = " + std::to_string(f.value));
        }

        // advance the odometer at the deepest position that still matters
        std::size_t pos = fail_at == m ? m - 1 : fail_at;
        while (++idx[pos] == comps[pos].elements.size()) {
            idx[pos] = 0;
            if (pos == 0) {
                res.kernel.reserve(res.witnesses.size());
                for (const auto& [k, _] : res.witnesses) res.kernel.push_back(k);
                return res;
            }
            --pos;
        }
        for (std::size_t j = pos + 1; j < m; ++j) idx[j] = 0;
        from = pos;
    }
}

inline KernelResult enumerate_kernel(u64 n) { return enumerate_kernel(factorize(n)); }

/// |G_n| = phi(w(n)) / |K_n|.
inline GroupOrderReport group_order(const Factorization& f) {
    if (f.value == 1) return trivial_report();
    const auto kr = enumerate_kernel(f);
    GroupOrderReport r;
    r.n = f.value;
    r.w = kr.profile.w;
    r.phi_w = euler_phi(r.w);
    r.kernel_size = kr.kernel.size();
    r.method = OrderMethod::kernel_enum;
    if (r.kernel_size == 0 || r.phi_w % r.kernel_size != 0)
        throw InternalError("|K_n| = " + std::to_string(r.kernel_size) + " does not divide phi(w(n)) = " +
                            std::to_string(r.phi_w));
    r.order = r.phi_w / r.kernel_size;
    return r;
}

inline GroupOrderReport group_order(u64 n) { return group_order(factorize(n)); }

/// Closed form for |G_{p^e}|:
///   p = 2:  1 (e < 3),  2^(e-3) (e >= 3)
///   p = 3:  1 (e = 1),  2 * 3^(e-2) (e > 1)
///   p >= 5: phi((p^2-1)/2) / 4 (e = 1),  p^(e-2) (p-1)/2 * phi((p^2-1)/2) (e > 1)
inline u64 group_order_closed_pe(u64 p, unsigned e) {
    if (e == 0) throw std::invalid_argument("group_order_closed_pe: exponent must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("group_order_closed_pe: " + std::to_string(p) + " is not prime");
    if (p == 2) return e < 3 ? 1 : checked_pow(2, e - 3);
    if (p == 3) return e == 1 ? 1 : checked_mul(2, checked_pow(3, e - 2));
    const u64 phi_half = euler_phi(checked_mul((p - 1) / 2, p + 1));
    if (e == 1) {
        if (phi_half % 4 != 0) throw InternalError("phi((p^2-1)/2) not divisible by 4 for p = " + std::to_string(p));
        return phi_half / 4;
    }
    return checked_mul(checked_mul(checked_pow(p, e - 2), (p - 1) / 2), phi_half);
}

/// Report for a prime power using the closed form and the known kernel size.
inline GroupOrderReport closed_form_report(u64 p, unsigned e) {
    const auto comp = kernel_component(p, e);
    GroupOrderReport r;
    r.n = checked_pow(p, e);
    r.w = comp.modulus;
    r.phi_w = euler_phi(r.w);
    r.kernel_size = comp.elements.size();
    r.order = group_order_closed_pe(p, e);
    r.method = OrderMethod::closed_form;
    return r;
}

/// The k mod w(n) whose residue tuple is `tuple` (one entry per kernel
/// component, 2-power first when n is even). Entries may be negative.
inline u64 rho(std::span<const i64> tuple, const Factorization& f) {
    const auto comps = kernel_components(f);
    if (tuple.size() != comps.size())
        throw std::invalid_argument("rho: tuple has " + std::to_string(tuple.size()) + " entries, n has " +
                                    std::to_string(comps.size()) + " prime-power components");
    std::vector<Congruence> cs;
    cs.reserve(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        Congruence c(tuple[i], comps[i].modulus);
        if (!comps[i].contains(c.residue()))
            throw std::invalid_argument("rho: entry " + std::to_string(i) + " is not in the kernel component");
        cs.push_back(c);
    }
    const auto sol = solve_chain(cs);
    if (!sol) throw NotInA("rho: the residue tuple has no common solution");
    return sol->residue;
}

/// Brute force: units k mod w(n) with D_k(u) = u for every u in Z_n.
inline std::vector<u64> kernel_oracle(u64 n, u64 cap = oracle::kDefaultCap) {
    return oracle::identity_exponents(oracle::build_table(n, cap));
}

/// Brute force: number of distinct maps u -> D_k(u) over k in Z*_{w(n)}.
inline u64 group_order_oracle(u64 n, u64 cap = oracle::kDefaultCap) {
    return oracle::distinct_maps(oracle::build_table(n, cap));
}

/// Oracle report from a single table build.
inline GroupOrderReport oracle_report(u64 n, u64 cap = oracle::kDefaultCap) {
    if (n == 1) return trivial_report();
    const auto t = oracle::build_table(n, cap);
    GroupOrderReport r;
    r.n = n;
    r.w = t.w();
    r.phi_w = t.size();
    r.kernel_size = oracle::identity_exponents(t).size();
    r.order = oracle::distinct_maps(t);
    r.method = OrderMethod::oracle;
    return r;
}

}  // namespace dickson

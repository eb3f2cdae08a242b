#pragma once

// Brute-force ground truth for G_n: the permutation of Z_n induced by every
// unit k mod w(n), computed only from the three-term recurrence.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dickson/criteria.hpp"
#include "dickson/dickson.hpp"
#include "dickson/errors.hpp"
#include "dickson/numth.hpp"

namespace dickson::oracle {

inline constexpr u64 kDefaultCap = 2000;

/// Map k -> (D_k(0), ..., D_k(n-1)) for every k in Z*_{w(n)}, with a = 1.
///
/// Each distinct image vector is stored once; `class_of[i]` names the vector
/// for `units[i]`.
class InducedMapTable {
public:
    using Image = std::vector<std::uint32_t>;

    u64 modulus() const { return n_; }
    u64 w() const { return w_; }
    std::span<const u64> units() const { return units_; }
    std::size_t size() const { return units_.size(); }
    std::span<const Image> distinct_images() const { return images_; }

    /// Image vector of unit k (k must be a canonical unit mod w).
    std::span<const std::uint32_t> entry(u64 k) const {
        const auto it = std::lower_bound(units_.begin(), units_.end(), k);
        if (it == units_.end() || *it != k)
            throw std::out_of_range("k = " + std::to_string(k) + " is not a unit mod " + std::to_string(w_));
        return images_[class_of_[static_cast<std::size_t>(it - units_.begin())]];
    }

    std::uint32_t class_of(std::size_t i) const { return class_of_[i]; }

private:
    friend InducedMapTable build_table(u64 n, u64 cap);

    u64 n_ = 0;
    u64 w_ = 1;
    std::vector<u64> units_;
    std::vector<std::uint32_t> class_of_;
    std::vector<Image> images_;
};

namespace detail {

inline u64 hash_image(std::span<const std::uint32_t> v) {
    u64 h = 0x9e3779b97f4a7c15ull;
    for (auto x : v) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return h;
}

}  // namespace detail

inline InducedMapTable build_table(u64 n, u64 cap = kDefaultCap) {
    if (n == 0) throw std::invalid_argument("modulus must be >= 1");
    if (n > cap)
        throw CapExceeded("oracle table: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    if (n > SmallRecurrenceSweep::reducer_type::kMaxModulus)
        throw CapExceeded("oracle table: n = " + std::to_string(n) + " exceeds the 32-bit sweep limit");
    InducedMapTable t;
    t.n_ = n;
    t.w_ = n == 1 ? 1 : profile(n).w;
    // Z*_1 = {0} by convention; the single map on Z_1 is the identity.
    if (t.w_ == 1) {
        t.units_ = {0};
        t.class_of_ = {0};
        t.images_ = {InducedMapTable::Image(n, 0)};
        return t;
    }

    std::unordered_multimap<u64, std::uint32_t> by_hash;
    SmallRecurrenceSweep sweep(n, 1);
    for (u64 k = 0; k < t.w_; ++k, sweep.advance()) {
        if (std::gcd(k, t.w_) != 1) continue;
        const auto img = sweep.values();
        const u64 h = detail::hash_image(img);
        std::uint32_t cls = static_cast<std::uint32_t>(t.images_.size());
        const auto [lo, hi] = by_hash.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            const auto& cand = t.images_[it->second];
            if (std::equal(cand.begin(), cand.end(), img.begin(), img.end())) {
                cls = it->second;
                break;
            }
        }
        if (cls == t.images_.size()) {
            t.images_.emplace_back(img.begin(), img.end());
            by_hash.emplace(h, cls);
        }
        t.units_.push_back(k);
        t.class_of_.push_back(cls);
    }
    return t;
}

/// Number of distinct permutations in the table, i.e. |G_n|.
inline u64 distinct_maps(const InducedMapTable& t) { return t.distinct_images().size(); }

/// Every stored image is a bijection of Z_n.
inline bool all_images_bijective(const InducedMapTable& t) {
    std::vector<bool> seen(t.modulus());
    for (const auto& img : t.distinct_images()) {
        std::fill(seen.begin(), seen.end(), false);
        for (auto v : img) {
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

/// Units k whose induced map is the identity on Z_n.
inline std::vector<u64> identity_exponents(const InducedMapTable& t) {
    std::vector<u64> out;
    const auto images = t.distinct_images();
    std::vector<bool> is_id(images.size());
    for (std::size_t c = 0; c < images.size(); ++c) {
        bool id = true;
        for (std::size_t u = 0; u < images[c].size() && id; ++u) id = images[c][u] == u;
        is_id[c] = id;
    }
    const auto units = t.units();
    for (std::size_t i = 0; i < units.size(); ++i)
        if (is_id[t.class_of(i)]) out.push_back(units[i]);
    return out;
}

}  // namespace dickson::oracle

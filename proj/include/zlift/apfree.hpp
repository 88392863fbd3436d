#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "zlift/rational.hpp"

namespace zlift {

// Subset of {1,...,m} with no nontrivial 3-term arithmetic progression.
// "Nontrivial" means three distinct elements x < y < z with x + z = 2y.
struct ApFreeSet {
    std::int64_t m = 0;
    std::vector<std::int64_t> elements;  // strictly increasing

    std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
};

struct ApViolation {
    std::int64_t x, y, z;
};

// ok iff no nontrivial 3-AP; otherwise the lexicographically least violating
// triple. Membership-set scan over pairs, O(|s|^2).
inline std::optional<ApViolation> verify_ap_free(const std::vector<std::int64_t>& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1])
            throw std::invalid_argument("verify_ap_free: input must be sorted and distinct");
    std::unordered_set<std::int64_t> mem(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            std::int64_t z = 2 * s[j] - s[i];
            if (z != s[j] && mem.count(z)) return ApViolation{s[i], s[j], z};
        }
    return std::nullopt;
}

// digit-vector parameters for the sphere construction
struct BehrendParams {
    std::int64_t k = 1;
    std::int64_t d = 1;
};

// maximize d^k / (k(d-1)^2 + 1) subject to (2d-1)^k <= m;
// ties broken toward smaller k, then smaller d
inline BehrendParams behrend_parameters(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("behrend: m must be positive");
    BehrendParams best{1, 1};
    __int128 best_num = 1, best_den = 1;  // objective as a fraction
    for (std::int64_t k = 1;; ++k) {
        // (2d-1)^k <= m needs d >= 1; for d >= 2 the base is >= 3
        bool any = false;
        for (std::int64_t d = 1;; ++d) {
            __int128 pow_base = 1;
            bool fits = true;
            for (std::int64_t i = 0; i < k; ++i) {
                pow_base *= (2 * d - 1);
                if (pow_base > m) {
                    fits = false;
                    break;
                }
            }
            if (!fits) break;
            any = true;
            __int128 num = 1;
            for (std::int64_t i = 0; i < k; ++i) num *= d;
            __int128 den = k * (d - 1) * (d - 1) + 1;
            if (num * best_den > best_num * den) {
                best = {k, d};
                best_num = num;
                best_den = den;
            }
        }
        if (!any || k > 64) break;
    }
    return best;
}

// Sphere construction: digit vectors x in {0..d-1}^k read as base-(2d-1)
// integers, grouped by squared norm; the largest norm class (smallest norm on
// ties) is AP-free because the base is wide enough that integer addition of
// two class members never carries.
inline ApFreeSet behrend_sphere_set(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("behrend_sphere_set: m must be positive");
    auto [k, d] = behrend_parameters(m);
    std::int64_t base = 2 * d - 1;
    std::map<std::int64_t, std::vector<std::int64_t>> classes;  // norm -> values
    std::vector<std::int64_t> digits(static_cast<std::size_t>(k), 0);
    for (;;) {
        std::int64_t value = 0, norm = 0, pw = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            value += digits[static_cast<std::size_t>(i)] * pw;
            norm += digits[static_cast<std::size_t>(i)] * digits[static_cast<std::size_t>(i)];
            pw *= base;
        }
        classes[norm].push_back(value);
        std::int64_t pos = 0;
        while (pos < k && digits[static_cast<std::size_t>(pos)] == d - 1)
            digits[static_cast<std::size_t>(pos++)] = 0;
        if (pos == k) break;
        ++digits[static_cast<std::size_t>(pos)];
    }
    auto best = classes.begin();  // ascending norm, so ties keep the smaller norm
    for (auto it = classes.begin(); it != classes.end(); ++it)
        if (it->second.size() > best->second.size()) best = it;
    ApFreeSet out;
    out.m = m;
    out.elements = best->second;
    std::sort(out.elements.begin(), out.elements.end());
    for (auto& v : out.elements) ++v;  // shift into {1..m}
    return out;
}

// All v < m whose base-3 digits are 0/1, shifted by one. Digitwise
// x_i + z_i = 2 y_i with digits in {0,1} forces x = y = z, so no carries and
// no progressions.
inline ApFreeSet ternary_digit_set(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("ternary_digit_set: m must be positive");
    ApFreeSet out;
    out.m = m;
    // binary counter reinterpreted in base 3 is increasing, so stop at the first miss
    for (std::int64_t bits = 0;; ++bits) {
        std::int64_t v = 0, pw = 1;
        for (std::int64_t b = bits; b != 0; b >>= 1) {
            if (b & 1) v += pw;
            pw = checked_mul(pw, 3);
        }
        if (v >= m) break;
        out.elements.push_back(v + 1);
    }
    return out;
}

// the larger of the two constructions; ties go to ternary
inline ApFreeSet best_apfree(std::int64_t m) {
    ApFreeSet t = ternary_digit_set(m);
    ApFreeSet b = behrend_sphere_set(m);
    return b.size() > t.size() ? b : t;
}

struct ExactApResult {
    std::int64_t size = 0;
    ApFreeSet witness;
};

inline constexpr std::int64_t kExactApFreeCap = 30;

// Maximum AP-free subset of {1..m} by branch and bound (include-first DFS,
// greedy bound |current| + |remaining|). Exact, deterministic.
inline ExactApResult exact_max_apfree(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("exact_max_apfree: m must be positive");
    if (m > kExactApFreeCap) throw std::invalid_argument("exact_max_apfree: m above cap");
    std::vector<std::int64_t> current, best;
    std::uint32_t mask = 0;  // membership of current
    auto can_add = [&](std::int64_t x) {
        // x enters as the largest element: only APs (2b-x, b, x) can appear
        for (auto b : current) {
            std::int64_t a = 2 * b - x;
            if (a >= 1 && a != b && (mask >> (a - 1) & 1)) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, std::int64_t next) -> void {
        if (static_cast<std::int64_t>(current.size()) + (m - next + 1) <=
            static_cast<std::int64_t>(best.size()))
            return;
        if (next > m) {
            if (current.size() > best.size()) best = current;
            return;
        }
        if (can_add(next)) {
            current.push_back(next);
            mask |= std::uint32_t{1} << (next - 1);
            self(self, next + 1);
            mask &= ~(std::uint32_t{1} << (next - 1));
            current.pop_back();
        }
        self(self, next + 1);
    };
    dfs(dfs, 1);
    ExactApResult res;
    res.size = static_cast<std::int64_t>(best.size());
    res.witness.m = m;
    res.witness.elements = std::move(best);
    return res;
}

}  // namespace zlift

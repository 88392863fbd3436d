#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zlift/rational.hpp"

namespace zlift {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// n = p^k with p prime, k >= 1, if such a factorization exists
inline std::optional<std::pair<std::int64_t, std::int64_t>> factor_prime_power(std::int64_t n) {
    if (n < 2) return std::nullopt;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        std::int64_t k = 0, rest = n;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if (rest != 1) return std::nullopt;
        return std::make_pair(p, k);
    }
    return std::make_pair(n, std::int64_t{1});  // n itself prime
}

// F_{p^k} with elements encoded as integers in [0, p^k): base-p digits,
// little-endian, are the coefficients of the residue polynomial. The modulus
// is the first monic irreducible of degree k in that same encoding order.
class FiniteField {
public:
    static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 20;

    static FiniteField make(std::int64_t p, std::int64_t k) {
        if (!is_prime(p)) throw std::invalid_argument("FiniteField: p must be prime");
        if (k < 1) throw std::invalid_argument("FiniteField: k must be positive");
        std::int64_t q = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            q = checked_mul(q, p);
            if (q > kMaxOrder) throw std::invalid_argument("FiniteField: order above 2^20");
        }
        FiniteField f;
        f.p_ = p;
        f.k_ = k;
        f.q_ = q;
        f.modulus_ = find_modulus(p, k);
        return f;
    }

    std::int64_t p() const { return p_; }
    std::int64_t k() const { return k_; }
    std::int64_t size() const { return q_; }

    std::int64_t zero() const { return 0; }
    std::int64_t one() const { return 1; }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        check(a);
        check(b);
        std::int64_t out = 0, pw = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += ((a % p_ + b % p_) % p_) * pw;
            a /= p_;
            b /= p_;
            pw *= p_;
        }
        return out;
    }

    std::int64_t neg(std::int64_t a) const {
        check(a);
        std::int64_t out = 0, pw = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += ((p_ - a % p_) % p_) * pw;
            a /= p_;
            pw *= p_;
        }
        return out;
    }

    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        check(a);
        check(b);
        // schoolbook product of the coefficient vectors, then reduce by the
        // monic modulus from the top degree down
        std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
        std::vector<std::int64_t> da = digits(a), db = digits(b);
        for (std::int64_t i = 0; i < k_; ++i)
            for (std::int64_t j = 0; j < k_; ++j)
                prod[static_cast<std::size_t>(i + j)] +=
                    da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)];
        for (std::int64_t deg = 2 * k_ - 2; deg >= k_; --deg) {
            std::int64_t c = prod[static_cast<std::size_t>(deg)] % p_;
            if (c == 0) continue;
            // x^deg = -modulus_tail * x^(deg-k)
            for (std::int64_t i = 0; i < k_; ++i)
                prod[static_cast<std::size_t>(deg - k_ + i)] -=
                    c * modulus_[static_cast<std::size_t>(i)];
            prod[static_cast<std::size_t>(deg)] = 0;
        }
        std::int64_t out = 0, pw = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += (((prod[static_cast<std::size_t>(i)] % p_) + p_) % p_) * pw;
            pw *= p_;
        }
        return out;
    }

    std::int64_t pow(std::int64_t a, std::int64_t e) const {
        check(a);
        if (e < 0) throw std::invalid_argument("FiniteField::pow: negative exponent");
        std::int64_t out = 1;
        while (e > 0) {
            if (e & 1) out = mul(out, a);
            a = mul(a, a);
            e >>= 1;
        }
        return out;
    }

    std::int64_t inverse(std::int64_t a) const {
        check(a);
        if (a == 0) throw std::invalid_argument("FiniteField::inverse of zero");
        return pow(a, q_ - 2);
    }

    // fixed points of the q0-power Frobenius, i.e. the subfield of order q0
    std::vector<std::int64_t> subfield_elements(std::int64_t q0) const {
        std::vector<std::int64_t> out;
        for (std::int64_t z = 0; z < q_; ++z)
            if (pow(z, q0) == z) out.push_back(z);
        return out;
    }

    std::string modulus_string() const {
        std::string s = "x";
        if (k_ > 1) s += "^" + std::to_string(k_);
        for (std::int64_t i = k_ - 1; i >= 0; --i) {
            std::int64_t c = modulus_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            s += " + ";
            if (i == 0) {
                s += std::to_string(c);
            } else {
                if (c != 1) s += std::to_string(c);
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    std::int64_t p_ = 2, k_ = 1, q_ = 2;
    std::vector<std::int64_t> modulus_;  // non-leading coefficients, little-endian

    void check(std::int64_t a) const {
        if (a < 0 || a >= q_) throw std::out_of_range("FiniteField: element out of range");
    }

    std::vector<std::int64_t> digits(std::int64_t a) const {
        std::vector<std::int64_t> d(static_cast<std::size_t>(k_));
        for (std::int64_t i = 0; i < k_; ++i) {
            d[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return d;
    }

    // little-endian coefficients of an arbitrary-degree poly, trimmed
    static std::vector<std::int64_t> decode_poly(std::int64_t enc, std::int64_t p,
                                                 std::int64_t deg, bool monic) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(deg + 1), 0);
        for (std::int64_t i = 0; i < deg; ++i) {
            c[static_cast<std::size_t>(i)] = enc % p;
            enc /= p;
        }
        c[static_cast<std::size_t>(deg)] = monic ? 1 : 0;
        return c;
    }

    // remainder of f by monic g, both little-endian coefficient vectors mod p
    static bool divides(const std::vector<std::int64_t>& g, std::vector<std::int64_t> f,
                        std::int64_t p) {
        std::int64_t dg = static_cast<std::int64_t>(g.size()) - 1;
        for (std::int64_t deg = static_cast<std::int64_t>(f.size()) - 1; deg >= dg; --deg) {
            std::int64_t c = f[static_cast<std::size_t>(deg)] % p;
            if (c == 0) continue;
            for (std::int64_t i = 0; i <= dg; ++i) {
                auto& coef = f[static_cast<std::size_t>(deg - dg + i)];
                coef = ((coef - c * g[static_cast<std::size_t>(i)]) % p + p) % p;
            }
        }
        for (std::int64_t i = 0; i < dg; ++i)
            if (f[static_cast<std::size_t>(i)] % p != 0) return false;
        return true;
    }

    static bool is_irreducible(const std::vector<std::int64_t>& f, std::int64_t p) {
        std::int64_t deg = static_cast<std::int64_t>(f.size()) - 1;
        if (deg == 1) return true;
        for (std::int64_t d = 1; 2 * d <= deg; ++d) {
            std::int64_t count = 1;
            for (std::int64_t i = 0; i < d; ++i) count *= p;
            for (std::int64_t enc = 0; enc < count; ++enc)
                if (divides(decode_poly(enc, p, d, true), f, p)) return false;
        }
        return true;
    }

    static std::vector<std::int64_t> find_modulus(std::int64_t p, std::int64_t k) {
        std::int64_t count = 1;
        for (std::int64_t i = 0; i < k; ++i) count *= p;
        for (std::int64_t enc = 0; enc < count; ++enc) {
            auto cand = decode_poly(enc, p, k, true);
            if (is_irreducible(cand, p)) {
                cand.pop_back();  // store only the non-leading part
                return cand;
            }
        }
        throw std::logic_error("FiniteField: no irreducible polynomial found");
    }
};

}  // namespace zlift

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zlift {

// Counts are 64-bit everywhere; overflow is an error, never wraparound.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit multiply overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit add overflow");
    return r;
}

// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
// Just enough arithmetic for exponent targets and Chebyshev bounds.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    explicit Rational(std::int64_t n) : num(n), den(1) {}

    bool operator==(const Rational& o) const = default;

    // exact comparison via 128-bit cross multiplication
    std::strong_ordering operator<=>(const Rational& o) const {
        __int128 lhs = static_cast<__int128>(num) * o.den;
        __int128 rhs = static_cast<__int128>(o.num) * den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// (a*b)/c reduced, verified to fit in 64 bits.
inline Rational rational_product_over(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (c <= 0) throw std::invalid_argument("rational_product_over: nonpositive denominator");
    __int128 n = static_cast<__int128>(a) * b;
    __int128 g128 = c;
    // reduce before the range check so in-range values never spuriously overflow
    {
        __int128 x = n < 0 ? -n : n, y = g128;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        if (x > 1) {
            n /= x;
            g128 /= x;
        }
    }
    if (n > INT64_MAX || n < INT64_MIN) throw std::overflow_error("rational numerator overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(g128));
}

// integer >= rational, exactly
inline bool int_geq_rational(std::int64_t v, const Rational& r) {
    return static_cast<__int128>(v) * r.den >= static_cast<__int128>(r.num);
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace zlift

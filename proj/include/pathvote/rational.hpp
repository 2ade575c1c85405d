#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathvote {

// Exact rational on a 128-bit backend, always kept reduced with a positive
// denominator. Election tallies are sums of unit fractions 1/k with k <= the
// candidate count; with equal splits grouped per k (see eb_round) the
// denominators stay around the lcm of one narrow band of split sizes, well
// inside 128 bits. Arithmetic is overflow-checked and throws instead of
// wrapping; ordering uses a continued-fraction walk that cannot overflow.
class Rational {
public:
    using int_t = __int128;

    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const int_t g = gcd128(num < 0 ? -int_t(num) : int_t(num), int_t(den));
        num_ = g > 1 ? num / g : num;
        den_ = g > 1 ? den / g : den;
    }

    int_t num() const { return num_; }
    int_t den() const { return den_; }

    Rational operator+(const Rational& o) const { return add(o, false); }
    Rational operator-(const Rational& o) const { return add(o, true); }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational operator*(const Rational& o) const {
        // Cross-reduce first so the checked products stay as small as the
        // result allows.
        const int_t g1 = gcd128(abs128(num_), o.den_);
        const int_t g2 = gcd128(abs128(o.num_), den_);
        Rational r;
        r.num_ = checked_mul(num_ / g1, o.num_ / g2);
        r.den_ = checked_mul(den_ / g2, o.den_ / g1);
        return r;
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        Rational inv;
        inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
        inv.den_ = abs128(o.num_);
        return *this * inv;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        if (num_ == o.num_ && den_ == o.den_) return std::strong_ordering::equal;
        // Different signs decide immediately; otherwise compare |a|/b, |c|/d
        // by the Euclidean continued-fraction expansion (exact, no products).
        const int sa = num_ < 0 ? -1 : num_ > 0 ? 1 : 0;
        const int sb = o.num_ < 0 ? -1 : o.num_ > 0 ? 1 : 0;
        if (sa != sb) return sa <=> sb;
        int_t a = abs128(num_), b = den_, c = abs128(o.num_), d = o.den_;
        bool flipped = sa < 0;  // comparing magnitudes of negatives flips
        for (;;) {
            const int_t qa = a / b, qc = c / d;
            if (qa != qc) return flipped ? qc <=> qa : qa <=> qc;
            a -= qa * b;
            c -= qc * d;
            if (a == 0 || c == 0) {
                if (a == c) return std::strong_ordering::equal;
                const bool smaller = (a == 0);  // a/b < c/d at this level
                return smaller != flipped ? std::strong_ordering::less
                                          : std::strong_ordering::greater;
            }
            // a/b vs c/d with both in (0,1): compare reciprocals, reversed.
            std::swap(a, b);
            std::swap(c, d);
            flipped = !flipped;
        }
    }

    double to_double() const { return double(num_) / double(den_); }

    // Canonical "p" or "p/q" form, used verbatim in round tables and CSVs.
    std::string str() const {
        std::string s = to_string(num_);
        if (den_ != 1) s += "/" + to_string(den_);
        return s;
    }

private:
    static int_t abs128(int_t v) { return v < 0 ? -v : v; }

    static int_t gcd128(int_t a, int_t b) {
        while (b != 0) { const int_t t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    static int_t checked_mul(int_t a, int_t b) {
        int_t out;
        if (__builtin_mul_overflow(a, b, &out))
            throw std::overflow_error("Rational: 128-bit overflow");
        return out;
    }
    static int_t checked_add(int_t a, int_t b) {
        int_t out;
        if (__builtin_add_overflow(a, b, &out))
            throw std::overflow_error("Rational: 128-bit overflow");
        return out;
    }

    Rational add(const Rational& o, bool negate) const {
        // a/b + c/d via g = gcd(b, d), keeping intermediates near the result.
        const int_t g = gcd128(den_, o.den_);
        const int_t db = o.den_ / g;
        const int_t num = checked_add(checked_mul(num_, db),
                                      checked_mul(negate ? -o.num_ : o.num_, den_ / g));
        const int_t den = checked_mul(den_, db);
        const int_t r = gcd128(abs128(num), den);
        Rational out;
        out.num_ = r > 1 ? num / r : num;
        out.den_ = r > 1 ? den / r : den;
        return out;
    }

    static std::string to_string(int_t v) {
        if (v == 0) return "0";
        const bool neg = v < 0;
        unsigned __int128 mag = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        std::string digits;
        while (mag != 0) {
            digits += char('0' + int(mag % 10));
            mag /= 10;
        }
        if (neg) digits += '-';
        return {digits.rbegin(), digits.rend()};
    }

    int_t num_ = 0;
    int_t den_ = 1;
};

}  // namespace pathvote

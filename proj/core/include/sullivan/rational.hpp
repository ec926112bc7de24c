#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace sullivan {

// Exact rational number. Always canonical: lowest terms, denominator > 0.
// Small values (the overwhelming majority in these computations) live in a
// pair of int64s with no allocation; anything larger promotes to an immutable
// shared GMP rational. No floating point anywhere.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long n, unsigned long d);
    explicit Rational(const mpq_class& v) { *this = from_mpq(v); }

    // Parses "n" or "n/d".
    static Rational parse(const std::string& s);
    static Rational from_parts(const std::string& num, const std::string& den);

    bool is_zero() const { return big_ ? false : num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    int sign() const;

    std::string num_str() const;
    std::string den_str() const;
    std::string str() const;

    mpq_class to_mpq() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    static Rational make(__int128 n, __int128 d);
    static Rational from_mpq(const mpq_class& v);
    static int cmp(const Rational& a, const Rational& b);

    // small mode: big_ empty, den_ > 0, gcd(|num_|, den_) = 1
    // big mode:   big_ set (canonical), num_/den_ unused
    int64_t num_;
    int64_t den_;
    std::shared_ptr<const mpq_class> big_;
};

}  // namespace sullivan

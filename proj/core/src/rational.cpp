#include "sullivan/rational.hpp"

#include <ostream>

#include "sullivan/error.hpp"

namespace sullivan {

namespace {

// values stay small while |num| and den fit comfortably below 2^62, which
// keeps every 128-bit intermediate in range
constexpr __int128 kSmallBound = (__int128(1) << 62);

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi(uint64_t(u >> 64));
    mpz_class out = (hi << 64) + mpz_class(uint64_t(u));
    return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
    if (d == 0) throw Error("zero denominator");
    if (n == 0) return Rational();
    if (d < 0) {
        n = -n;
        d = -d;
    }
    unsigned __int128 an = n < 0 ? (unsigned __int128)(-(n + 1)) + 1 : (unsigned __int128)n;
    unsigned __int128 g = gcd128(an, (unsigned __int128)d);
    n /= __int128(g);
    d /= __int128(g);
    Rational r;
    if (n > -kSmallBound && n < kSmallBound && d < kSmallBound) {
        r.num_ = int64_t(n);
        r.den_ = int64_t(d);
        return r;
    }
    mpq_class q(mpz_from_i128(n));
    q /= mpq_class(mpz_from_i128(d));
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::from_mpq(const mpq_class& v) {
    mpq_class c = v;
    c.canonicalize();
    if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p()) {
        long n = c.get_num().get_si();
        long d = c.get_den().get_si();
        if (__int128(n) > -kSmallBound && __int128(n) < kSmallBound && __int128(d) < kSmallBound) {
            Rational r;
            r.num_ = n;
            r.den_ = d;
            return r;
        }
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(std::move(c));
    return r;
}

Rational::Rational(long n, unsigned long d) { *this = make(__int128(n), __int128(d)); }

Rational Rational::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw Error("invalid rational literal: " + s);
    if (sgn(v.get_den()) == 0) throw Error("zero denominator in rational literal: " + s);
    v.canonicalize();
    return from_mpq(v);
}

Rational Rational::from_parts(const std::string& num, const std::string& den) {
    mpz_class n, d;
    if (n.set_str(num, 10) != 0) throw Error("invalid integer: " + num);
    if (d.set_str(den, 10) != 0) throw Error("invalid integer: " + den);
    if (sgn(d) == 0) throw Error("zero denominator");
    mpq_class v(n, d);
    v.canonicalize();
    return from_mpq(v);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(long(num_), ulong(1));
    q /= mpq_class(long(den_), ulong(1));
    return q;
}

std::string Rational::num_str() const {
    if (big_) return big_->get_num().get_str();
    return std::to_string(num_);
}

std::string Rational::den_str() const {
    if (big_) return big_->get_den().get_str();
    return std::to_string(den_);
}

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return num_str();
        return num_str() + "/" + den_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return Rational::make(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                              __int128(a.den_) * b.den_);
    }
    return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return Rational::make(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                              __int128(a.den_) * b.den_);
    }
    return Rational::from_mpq(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return Rational::make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("division by zero");
    if (!a.big_ && !b.big_) {
        return Rational::make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }
    return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

Rational operator-(const Rational& a) {
    if (!a.big_) return Rational::make(-__int128(a.num_), __int128(a.den_));
    return Rational::from_mpq(mpq_class(-*a.big_));
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_mpq() == b.to_mpq();
}

int Rational::cmp(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        __int128 l = __int128(a.num_) * b.den_;
        __int128 r = __int128(b.num_) * a.den_;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    return ::cmp(a.to_mpq(), b.to_mpq());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace sullivan

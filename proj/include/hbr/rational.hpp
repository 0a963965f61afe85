#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hbr {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number over arbitrary-precision integers.
//
// Invariants: den > 0 and gcd(|num|, den) == 1 at all times, so equality is
// plain structural equality and values hash consistently.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    // Canonical form makes equality structural.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const {
        namespace mp = boost::multiprecision;
        mp::cpp_rational q(num_, den_);
        return q.convert_to<double>();
    }

    // Exact value of an IEEE double (every finite double is a dyadic rational).
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite double");
        if (v == 0.0) return Rational();
        int exp = 0;
        double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
        auto scaled = static_cast<long long>(std::ldexp(mant, 53));
        exp -= 53;
        BigInt num(scaled), den(1);
        if (exp >= 0) {
            num <<= exp;
        } else {
            den <<= -exp;
        }
        return Rational(std::move(num), std::move(den));
    }

    // Token syntax: `p/q` or bare integer `p`, optional leading `-`, no spaces.
    static Rational parse(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("bad rational token: '" + std::string(s) + "'"); };
        if (s.empty()) bad();
        auto slash = s.find('/');
        auto parse_int = [&](std::string_view t) -> BigInt {
            if (t.empty()) bad();
            std::size_t i = (t[0] == '-') ? 1 : 0;
            if (i == t.size()) bad();
            for (std::size_t k = i; k < t.size(); ++k)
                if (t[k] < '0' || t[k] > '9') bad();
            return BigInt(std::string(t));
        };
        if (slash == std::string_view::npos) return Rational(parse_int(s));
        BigInt num = parse_int(s.substr(0, slash));
        BigInt den = parse_int(s.substr(slash + 1));
        if (den <= 0) bad();
        return Rational(std::move(num), std::move(den));
    }

    std::string to_string() const {
        std::string out = num_.str();
        if (den_ != 1) {
            out += '/';
            out += den_.str();
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

    friend std::size_t hash_value(const Rational& r) {
        std::size_t seed = 0;
        boost::hash_combine(seed, r.num_);
        boost::hash_combine(seed, r.den_);
        return seed;
    }

private:
    struct unchecked {};
    Rational(unchecked, BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::lcm(a, b);
}

}  // namespace hbr

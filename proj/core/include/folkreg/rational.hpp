#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>

#include "folkreg/errors.hpp"

namespace folkreg {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. All density and index arithmetic in the library is
/// carried out on Rational so that increment tests never drown in rounding
/// noise; doubles appear only at API edges.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}          // NOLINT: implicit by design
    Rational(const BigInt& v) : num_(v), den_(1) {}      // NOLINT
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw ArgumentError("rational with zero denominator");
        normalize();
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

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
        if (b.num_ == 0) throw ArgumentError("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

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

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational pow(unsigned e) const {
        Rational r(1);
        Rational base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r *= base;
            base *= base;
        }
        return r;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    /// Canonical text form "num/den" (integers keep the "/1").
    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    /// Parses "num/den" or a bare integer.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
            return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            throw ArgumentError("cannot parse rational: " + s);
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    struct raw_tag {};
    Rational(BigInt num, BigInt den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

/// 10^-12 as an exact rational; the tolerance used by the monotonicity checks.
inline const Rational& index_tolerance() {
    static const Rational tol(BigInt(1), BigInt(1000000000000LL));
    return tol;
}

} // namespace folkreg

#pragma once

#include "bigint.hpp"

#include <string>
#include <vector>

namespace troppatch {

// Exact rational number. Always normalized: den > 0, gcd(num, den) = 1.
// No floating point appears anywhere in this library.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    // Accepts "p", "p/q", optional leading sign.
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(BigInt::from_string(s), BigInt(1));
        return Rat(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend Rat operator-(const Rat& a) { return Rat(a.num_.neg(), a.den_); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return (a.num_ * b.den_) < (b.num_ * a.den_); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (den_.is_negative()) { num_ = num_.neg(); den_ = den_.neg(); }
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

using QVec = std::vector<Rat>;

inline QVec qvec_from_ints(const std::vector<long long>& v) {
    QVec r;
    r.reserve(v.size());
    for (long long x : v) r.emplace_back(x);
    return r;
}

} // namespace troppatch

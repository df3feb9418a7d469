#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace troppatch {

// Arbitrary-precision signed integer, sign + little-endian 32-bit limbs.
// Sizes in this project stay tiny (a few limbs); clarity over speed.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) { sign_ = -1; }
        else if (v > 0) { sign_ = 1; }
        unsigned long long m = (v < 0) ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
        while (m) { mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu)); m >>= 32; }
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) { sign = (s[i] == '-') ? -1 : 1; ++i; }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
            r = r.mul_small(10);
            r = r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.mag_.empty()) r.sign_ = sign;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt abs() const { BigInt r = *this; if (r.sign_ < 0) r.sign_ = 1; return r; }
    BigInt neg() const { BigInt r = *this; r.sign_ = -r.sign_; return r; }

    friend BigInt operator-(const BigInt& a) { return a.neg(); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        if (a.sign_ == b.sign_) {
            BigInt r; r.sign_ = a.sign_; r.mag_ = add_mag(a.mag_, b.mag_); return r;
        }
        int c = cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
        else       { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.neg(); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.sign_ = a.sign_ * b.sign_;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.mag_[i]) * b.mag_[j] + r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    // Truncated division (quotient rounds toward zero, like C++ integers).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        if (cmp_mag(a.mag_, b.mag_) < 0) { q = BigInt(); r = a; return; }
        std::vector<uint32_t> qm(a.mag_.size(), 0);
        BigInt rem;
        int bits = static_cast<int>(a.mag_.size()) * 32;
        for (int i = bits - 1; i >= 0; --i) {
            rem.shift_left_1();
            if (a.bit(i)) rem.set_low_bit();
            if (cmp_mag(rem.mag_, b.mag_) >= 0) {
                rem.mag_ = sub_mag(rem.mag_, b.mag_);
                qm[i / 32] |= (1u << (i % 32));
            }
        }
        q.mag_ = std::move(qm);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        rem.trim();
        rem.sign_ = rem.mag_.empty() ? 0 : a.sign_;
        r = rem;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { BigInt q, r; divmod(a, b, q, r); return q; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { BigInt q, r; divmod(a, b, q, r); return r; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::string digits;
        BigInt t = abs();
        BigInt ten(10);
        while (!t.is_zero()) {
            BigInt q, r;
            divmod(t, ten, q, r);
            digits.push_back(static_cast<char>('0' + (r.mag_.empty() ? 0 : r.mag_[0])));
            t = q;
        }
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    // Only valid when the value fits; used for small display/count paths.
    long long to_ll() const {
        unsigned long long m = 0;
        if (mag_.size() > 2) throw std::overflow_error("BigInt: to_ll overflow");
        for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
        if (sign_ >= 0) {
            if (m > 0x7fffffffffffffffull) throw std::overflow_error("BigInt: to_ll overflow");
            return static_cast<long long>(m);
        }
        if (m > 0x8000000000000000ull) throw std::overflow_error("BigInt: to_ll overflow");
        return -static_cast<long long>(m - 1) - 1;
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    bool bit(int i) const {
        size_t w = static_cast<size_t>(i) / 32;
        if (w >= mag_.size()) return false;
        return (mag_[w] >> (i % 32)) & 1u;
    }

    void shift_left_1() {
        uint32_t carry = 0;
        for (auto& w : mag_) {
            uint32_t nc = w >> 31;
            w = (w << 1) | carry;
            carry = nc;
        }
        if (carry) mag_.push_back(carry);
    }

    void set_low_bit() {
        if (mag_.empty()) mag_.push_back(0);
        mag_[0] |= 1u;
    }

    BigInt mul_small(uint32_t f) const {
        BigInt r;
        if (sign_ == 0 || f == 0) return r;
        r.sign_ = sign_;
        uint64_t carry = 0;
        for (uint32_t w : mag_) {
            uint64_t cur = static_cast<uint64_t>(w) * f + carry;
            r.mag_.push_back(static_cast<uint32_t>(cur & 0xffffffffu));
            carry = cur >> 32;
        }
        if (carry) r.mag_.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    BigInt add_small(uint32_t v) const {
        if (sign_ < 0) throw std::logic_error("add_small on negative");
        BigInt r = *this;
        uint64_t carry = v;
        for (size_t i = 0; carry && i < r.mag_.size(); ++i) {
            uint64_t cur = r.mag_[i] + carry;
            r.mag_[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) r.mag_.push_back(static_cast<uint32_t>(carry));
        if (!r.mag_.empty()) r.sign_ = 1;
        return r;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r;
        r.reserve(std::max(a.size(), b.size()) + 1);
        uint64_t carry = 0;
        for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
            uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r.push_back(static_cast<uint32_t>(cur & 0xffffffffu));
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) { cur += (1ll << 32); borrow = 1; }
            else borrow = 0;
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

} // namespace troppatch

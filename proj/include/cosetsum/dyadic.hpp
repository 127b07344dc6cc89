#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "cosetsum/errors.hpp"

namespace cosetsum {

// Exact dyadic rational numerator / 2^exponent.
//
// Canonical form: exponent == 0 or numerator odd, and zero is 0 / 2^0. Every
// operation re-canonicalises, so equality is structural.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long value) : num_(value) {}                          // NOLINT(google-explicit-constructor)
    Dyadic(int value) : num_(value) {}                           // NOLINT(google-explicit-constructor)
    Dyadic(mpz_class numerator, unsigned long exponent = 0)
        : num_(std::move(numerator)), exp_(exponent) {
        canonicalize();
    }

    /// Parses the decimal integer string as numerator.
    static Dyadic from_parts(std::string_view numerator, unsigned long exponent) {
        mpz_class n;
        if (numerator.empty() || n.set_str(std::string(numerator), 10) != 0)
            throw FormatError("invalid dyadic numerator '" + std::string(numerator) + "'");
        return Dyadic(std::move(n), exponent);
    }

    /// Every finite double is a dyadic rational; the conversion is exact.
    static Dyadic from_double(double value) {
        if (!std::isfinite(value))
            throw InvalidArgument("cannot convert a non-finite double to a dyadic rational");
        if (value == 0.0)
            return {};
        int e2 = 0;
        double mant = std::frexp(value, &e2); // value = mant * 2^e2, 0.5 <= |mant| < 1
        mpz_class n;
        mpz_set_d(n.get_mpz_t(), std::ldexp(mant, 53));
        long shift = static_cast<long>(e2) - 53;
        if (shift >= 0) {
            mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
            return Dyadic(std::move(n), 0);
        }
        return Dyadic(std::move(n), static_cast<unsigned long>(-shift));
    }

    const mpz_class& numerator() const noexcept { return num_; }
    unsigned long exponent() const noexcept { return exp_; }

    bool is_zero() const noexcept { return sgn(num_) == 0; }
    int sign() const noexcept { return sgn(num_); }
    bool is_integer() const noexcept { return exp_ == 0; }

    double to_double() const {
        if (is_zero())
            return 0.0;
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, num_.get_mpz_t());
        return std::ldexp(mant, static_cast<int>(e2 - static_cast<long>(exp_)));
    }

    /// "num" or "num/2^e"; readable form used in diagnostics.
    std::string to_string() const {
        if (exp_ == 0)
            return num_.get_str();
        return num_.get_str() + "/2^" + std::to_string(exp_);
    }

    /// Multiplies by 2^k (k may be negative).
    Dyadic mul_pow2(long k) const {
        if (is_zero() || k == 0)
            return *this;
        if (k < 0) {
            return Dyadic(num_, exp_ + static_cast<unsigned long>(-k));
        }
        auto uk = static_cast<unsigned long>(k);
        if (uk <= exp_)
            return Dyadic(num_, exp_ - uk);
        mpz_class n;
        mpz_mul_2exp(n.get_mpz_t(), num_.get_mpz_t(), uk - exp_);
        return Dyadic(std::move(n), 0);
    }

    Dyadic operator-() const {
        Dyadic r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }
    Dyadic& operator-=(const Dyadic& rhs) { return *this = *this - rhs; }
    Dyadic& operator*=(const Dyadic& rhs) { return *this = *this * rhs; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        unsigned long e = std::max(a.exp_, b.exp_);
        mpz_class x, y;
        mpz_mul_2exp(x.get_mpz_t(), a.num_.get_mpz_t(), e - a.exp_);
        mpz_mul_2exp(y.get_mpz_t(), b.num_.get_mpz_t(), e - b.exp_);
        return Dyadic(x + y, e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int c = (a - b).sign();
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

private:
    void canonicalize() {
        if (sgn(num_) == 0) {
            exp_ = 0;
            return;
        }
        if (exp_ == 0)
            return;
        mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
        mp_bitcnt_t drop = std::min<mp_bitcnt_t>(tz, exp_);
        if (drop > 0) {
            mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
            exp_ -= drop;
        }
    }

    mpz_class num_{0};
    unsigned long exp_ = 0;
};

inline Dyadic abs(const Dyadic& a) { return a.sign() < 0 ? -a : a; }

/// Dyadic value num / 2^exp from machine integers.
inline Dyadic dyadic(long num, unsigned long exp = 0) { return Dyadic(mpz_class(num), exp); }

} // namespace cosetsum

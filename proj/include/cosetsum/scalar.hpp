#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "cosetsum/dyadic.hpp"
#include "cosetsum/errors.hpp"

namespace cosetsum {

enum class ScalarKind { exact, approx };

inline const char* to_string(ScalarKind k) { return k == ScalarKind::exact ? "exact" : "float"; }

// A filter coefficient: an exact dyadic rational or a binary64 approximation.
// Arithmetic between the two kinds is refused rather than silently promoted.
class Scalar {
public:
    Scalar() : value_(Dyadic{}) {}
    Scalar(Dyadic d) : value_(std::move(d)) {} // NOLINT(google-explicit-constructor)
    Scalar(int v) : value_(Dyadic(v)) {}        // NOLINT(google-explicit-constructor)
    Scalar(long v) : value_(Dyadic(v)) {}       // NOLINT(google-explicit-constructor)

    static Scalar approx(double v) {
        Scalar s;
        s.value_ = v;
        return s;
    }
    static Scalar zero(ScalarKind kind) { return kind == ScalarKind::exact ? Scalar() : approx(0.0); }
    static Scalar one(ScalarKind kind) { return kind == ScalarKind::exact ? Scalar(1) : approx(1.0); }
    /// 2^k in the requested kind.
    static Scalar pow2(long k, ScalarKind kind) {
        if (kind == ScalarKind::exact)
            return Dyadic(1).mul_pow2(k);
        return approx(std::ldexp(1.0, static_cast<int>(k)));
    }
    /// Integer-valued scalar in the requested kind.
    static Scalar integer(long v, ScalarKind kind) {
        return kind == ScalarKind::exact ? Scalar(v) : approx(static_cast<double>(v));
    }

    ScalarKind kind() const noexcept {
        return std::holds_alternative<Dyadic>(value_) ? ScalarKind::exact : ScalarKind::approx;
    }
    bool is_exact() const noexcept { return kind() == ScalarKind::exact; }

    const Dyadic& exact() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return *d;
        throw ScalarKindMismatch("exact value requested from a floating-point scalar");
    }

    double to_double() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return d->to_double();
        return std::get<double>(value_);
    }

    bool is_zero() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return d->is_zero();
        return std::get<double>(value_) == 0.0;
    }

    Scalar mul_pow2(long k) const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return d->mul_pow2(k);
        return approx(std::ldexp(std::get<double>(value_), static_cast<int>(k)));
    }

    Scalar abs() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return cosetsum::abs(*d);
        return approx(std::fabs(std::get<double>(value_)));
    }

    std::string to_string() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return d->to_string();
        return std::to_string(std::get<double>(value_));
    }

    Scalar operator-() const {
        if (const auto* d = std::get_if<Dyadic>(&value_))
            return -*d;
        return approx(-std::get<double>(value_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return a.combine(b, Op::add); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a.combine(b, Op::sub); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return a.combine(b, Op::mul); }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Same kind and same value. Scalars of different kinds are never equal.
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

    /// Orders values of the same kind; throws on mixed kinds.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        if (a.is_exact())
            return a.exact() < b.exact();
        return a.to_double() < b.to_double();
    }

private:
    enum class Op { add, sub, mul };

    void require_same(const Scalar& b) const {
        if (kind() != b.kind())
            throw ScalarKindMismatch("cannot mix exact and floating-point coefficients");
    }

    Scalar combine(const Scalar& b, Op op) const {
        require_same(b);
        if (is_exact()) {
            const Dyadic& x = exact();
            const Dyadic& y = b.exact();
            switch (op) {
            case Op::add: return x + y;
            case Op::sub: return x - y;
            case Op::mul: return x * y;
            }
        }
        double x = to_double();
        double y = b.to_double();
        switch (op) {
        case Op::add: return approx(x + y);
        case Op::sub: return approx(x - y);
        case Op::mul: return approx(x * y);
        }
        return {};
    }

    std::variant<Dyadic, double> value_;
};

} // namespace cosetsum

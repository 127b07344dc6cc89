#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cosetsum/errors.hpp"
#include "cosetsum/scalar.hpp"

namespace cosetsum {

/// A point k of Z^n.
using Index = std::vector<std::int64_t>;

/// Absolute per-coefficient tolerance used wherever floating-point masks are
/// compared against an exact target.
inline constexpr double float_tolerance = 1e-10;

inline std::string index_key(std::span<const std::int64_t> k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(k[i]);
    }
    return s;
}

inline Index zero_index(std::size_t dim) { return Index(dim, 0); }

inline bool is_zero_index(std::span<const std::int64_t> k) {
    return std::all_of(k.begin(), k.end(), [](auto v) { return v == 0; });
}

// A point pi*gamma of pi*{0,1}^n, stored by its 0/1 vector gamma.
class ParityPoint {
public:
    ParityPoint() = default;
    explicit ParityPoint(std::vector<int> bits) : bits_(std::move(bits)) {
        for (int b : bits_)
            if (b != 0 && b != 1)
                throw InvalidArgument("parity point entries must be 0 or 1");
    }
    static ParityPoint origin(std::size_t dim) { return ParityPoint(std::vector<int>(dim, 0)); }

    std::size_t dim() const noexcept { return bits_.size(); }
    const std::vector<int>& bits() const noexcept { return bits_; }
    bool is_origin() const noexcept {
        return std::all_of(bits_.begin(), bits_.end(), [](int b) { return b == 0; });
    }
    Index as_index() const { return Index(bits_.begin(), bits_.end()); }

    /// (-1)^{k . gamma}
    int sign_at(std::span<const std::int64_t> k) const {
        std::int64_t parity = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            parity += bits_[i] * (k[i] & 1);
        return (parity & 1) ? -1 : 1;
    }

    friend bool operator==(const ParityPoint&, const ParityPoint&) = default;

private:
    std::vector<int> bits_;
};

/// {0,1}^n in lexicographic order; the origin comes first.
inline std::vector<ParityPoint> parity_points(std::size_t dim) {
    std::vector<ParityPoint> out;
    const std::size_t count = std::size_t{1} << dim;
    out.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        std::vector<int> bits(dim);
        for (std::size_t i = 0; i < dim; ++i)
            bits[i] = static_cast<int>((m >> (dim - 1 - i)) & 1U);
        out.emplace_back(std::move(bits));
    }
    return out;
}

/// {0,1}^n \ 0 in lexicographic order.
inline std::vector<ParityPoint> nonzero_parity_points(std::size_t dim) {
    auto all = parity_points(dim);
    all.erase(all.begin());
    return all;
}

namespace detail {
inline std::size_t support_cap_from_env() {
    if (const char* env = std::getenv("COSETSUM_MAX_SUPPORT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}
inline std::atomic<std::size_t>& support_cap_storage() {
    static std::atomic<std::size_t> cap{support_cap_from_env()};
    return cap;
}
} // namespace detail

/// Maximum number of nonzero coefficients a filter may hold. Defaults to 10^6,
/// overridable with COSETSUM_MAX_SUPPORT or set_support_cap().
inline std::size_t support_cap() { return detail::support_cap_storage().load(); }
inline void set_support_cap(std::size_t cap) { detail::support_cap_storage().store(cap); }

// Finitely supported h : Z^n -> R. Zero coefficients are never stored and
// all coefficients share one ScalarKind.
class Filter {
public:
    using Entries = std::map<Index, Scalar>;

    Filter() : Filter(1) {}
    explicit Filter(std::size_t dim, ScalarKind kind = ScalarKind::exact) : dim_(dim), kind_(kind) {
        if (dim == 0)
            throw InvalidArgument("filter dimension must be at least 1");
    }

    /// 1-D filter with taps[i] at index first + i.
    static Filter from_taps(std::int64_t first, const std::vector<Scalar>& taps) {
        if (taps.empty())
            throw InvalidArgument("empty tap list");
        Filter f(1, taps.front().kind());
        for (std::size_t i = 0; i < taps.size(); ++i)
            f.set({first + static_cast<std::int64_t>(i)}, taps[i]);
        return f;
    }

    std::size_t dim() const noexcept { return dim_; }
    ScalarKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const Entries& entries() const noexcept { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Scalar at(const Index& k) const {
        check_index(k);
        auto it = entries_.find(k);
        return it == entries_.end() ? Scalar::zero(kind_) : it->second;
    }
    Scalar at(std::int64_t k) const { return at(Index{k}); }

    void set(const Index& k, const Scalar& v) {
        check_index(k);
        check_kind(v);
        if (v.is_zero()) {
            entries_.erase(k);
            return;
        }
        entries_[k] = v;
        check_cap();
    }

    void accumulate(const Index& k, const Scalar& v) {
        if (v.is_zero())
            return;
        check_index(k);
        check_kind(v);
        auto [it, inserted] = entries_.try_emplace(k, v);
        if (inserted) {
            check_cap();
            return;
        }
        it->second += v;
        if (it->second.is_zero())
            entries_.erase(it);
    }

    Scalar sum() const {
        Scalar s = Scalar::zero(kind_);
        for (const auto& [k, v] : entries_)
            s += v;
        return s;
    }

    friend bool operator==(const Filter& a, const Filter& b) {
        return a.dim_ == b.dim_ && a.kind_ == b.kind_ && a.entries_ == b.entries_;
    }

private:
    void check_index(const Index& k) const {
        if (k.size() != dim_)
            throw DimensionMismatch("index of length " + std::to_string(k.size()) +
                                    " used with a filter of dimension " + std::to_string(dim_));
    }
    void check_kind(const Scalar& v) const {
        if (v.kind() != kind_)
            throw ScalarKindMismatch(std::string("cannot store a ") + to_string(v.kind()) +
                                     " coefficient in a " + to_string(kind_) + " filter");
    }
    void check_cap() const {
        if (entries_.size() > support_cap())
            throw SupportLimitExceeded("filter support exceeds the cap of " +
                                       std::to_string(support_cap()) + " nonzero coefficients");
    }

    std::size_t dim_;
    ScalarKind kind_;
    Entries entries_;
};

// The Laurent trigonometric polynomial tau(w) = 2^{-n} sum_k h(k) e^{-i k.w}
// associated with a filter h.
class Mask {
public:
    Mask() = default;
    explicit Mask(Filter filter) : filter_(std::move(filter)) {}

    const Filter& filter() const noexcept { return filter_; }
    std::size_t dim() const noexcept { return filter_.dim(); }
    ScalarKind kind() const noexcept { return filter_.kind(); }
    std::size_t support_size() const noexcept { return filter_.size(); }

    /// Coefficient of e^{-i k.w}, i.e. h(k) / 2^n.
    Scalar coefficient(const Index& k) const {
        return filter_.at(k).mul_pow2(-static_cast<long>(dim()));
    }

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    Filter filter_;
};

namespace detail {
inline void require_same_dim(const Mask& a, const Mask& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(op) + ": masks of dimension " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
}
inline void require_same_kind(const Mask& a, const Mask& b, const char* op) {
    if (a.kind() != b.kind())
        throw ScalarKindMismatch(std::string(op) + ": cannot mix exact and floating-point masks");
}
} // namespace detail

/// The constant mask c; its filter is 2^n c at the origin.
inline Mask constant(const Scalar& c, std::size_t dim) {
    Filter f(dim, c.kind());
    f.set(zero_index(dim), c.mul_pow2(static_cast<long>(dim)));
    return Mask(std::move(f));
}

inline Mask zero_mask(std::size_t dim, ScalarKind kind = ScalarKind::exact) { return Mask(Filter(dim, kind)); }

inline Mask operator+(const Mask& a, const Mask& b) {
    detail::require_same_dim(a, b, "mask addition");
    detail::require_same_kind(a, b, "mask addition");
    Filter f = a.filter();
    for (const auto& [k, v] : b.filter())
        f.accumulate(k, v);
    return Mask(std::move(f));
}

inline Mask operator*(const Scalar& c, const Mask& a) {
    if (c.kind() != a.kind())
        throw ScalarKindMismatch("mask scaling: cannot mix exact and floating-point values");
    Filter f(a.dim(), a.kind());
    if (c.is_zero())
        return Mask(std::move(f));
    for (const auto& [k, v] : a.filter())
        f.set(k, c * v);
    return Mask(std::move(f));
}

inline Mask operator-(const Mask& a) { return Scalar::integer(-1, a.kind()) * a; }
inline Mask operator-(const Mask& a, const Mask& b) { return a + (-b); }

/// Laurent polynomial product. The filters convolve and pick up one factor
/// 2^{-n} so the product is again in mask normalisation.
inline Mask operator*(const Mask& a, const Mask& b) {
    detail::require_same_dim(a, b, "mask product");
    detail::require_same_kind(a, b, "mask product");
    const std::size_t n = a.dim();
    Filter f(n, a.kind());
    Index k(n);
    for (const auto& [ka, va] : a.filter()) {
        for (const auto& [kb, vb] : b.filter()) {
            for (std::size_t i = 0; i < n; ++i)
                k[i] = ka[i] + kb[i];
            f.accumulate(k, va * vb);
        }
    }
    Filter out(n, a.kind());
    for (const auto& [kk, v] : f)
        out.set(kk, v.mul_pow2(-static_cast<long>(n)));
    return Mask(std::move(out));
}

/// Complex conjugate of a mask with real filter: h(k) -> h(-k).
inline Mask conjugate(const Mask& a) {
    Filter f(a.dim(), a.kind());
    for (const auto& [k, v] : a.filter()) {
        Index r(k.size());
        std::transform(k.begin(), k.end(), r.begin(), [](auto x) { return -x; });
        f.set(r, v);
    }
    return Mask(std::move(f));
}

/// Multiplication by e^{-i w.nu}: h(k) -> h(k - nu).
inline Mask shift(const Mask& a, const Index& nu) {
    if (nu.size() != a.dim())
        throw DimensionMismatch("shift vector length does not match the mask dimension");
    Filter f(a.dim(), a.kind());
    for (const auto& [k, v] : a.filter()) {
        Index t = k;
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] += nu[i];
        f.set(t, v);
    }
    return Mask(std::move(f));
}

/// w -> tau(w + pi*gamma): h(k) -> (-1)^{k.gamma} h(k).
inline Mask modulate(const Mask& a, const ParityPoint& gamma) {
    if (gamma.dim() != a.dim())
        throw DimensionMismatch("parity point dimension does not match the mask dimension");
    Filter f(a.dim(), a.kind());
    for (const auto& [k, v] : a.filter())
        f.set(k, gamma.sign_at(k) < 0 ? -v : v);
    return Mask(std::move(f));
}

/// The n-D mask w -> R(w.nu) for a univariate mask R; the 1-D filter value
/// H(K) lands at K*nu scaled by 2^{n-1}.
inline Mask lift_along_direction(const Mask& r, const Index& nu, std::size_t dim) {
    if (r.dim() != 1)
        throw DimensionMismatch("lift_along_direction expects a univariate mask");
    if (nu.size() != dim)
        throw DimensionMismatch("direction length does not match the target dimension");
    if (is_zero_index(nu))
        throw InvalidArgument("cannot lift along the zero direction");
    Filter f(dim, r.kind());
    for (const auto& [k, v] : r.filter()) {
        Index t(dim);
        for (std::size_t i = 0; i < dim; ++i)
            t[i] = k[0] * nu[i];
        f.set(t, v.mul_pow2(static_cast<long>(dim) - 1));
    }
    return Mask(std::move(f));
}

/// Places an m-D mask on coordinates [offset, offset+m) of Z^dim.
inline Mask embed(const Mask& a, std::size_t dim, std::size_t offset) {
    if (offset + a.dim() > dim)
        throw DimensionMismatch("embedding does not fit in the target dimension");
    Filter f(dim, a.kind());
    const long scale = static_cast<long>(dim - a.dim());
    for (const auto& [k, v] : a.filter()) {
        Index t(dim, 0);
        std::copy(k.begin(), k.end(), t.begin() + static_cast<std::ptrdiff_t>(offset));
        f.set(t, v.mul_pow2(scale));
    }
    return Mask(std::move(f));
}

/// 2^{-n} sum_k h(k) k^mu (-1)^{k.gamma}. The derivative D^mu tau at pi*gamma
/// is (-i)^{|mu|} times this value.
inline Scalar derivative_moment(const Mask& a, const std::vector<unsigned>& mu, const ParityPoint& gamma) {
    if (mu.size() != a.dim() || gamma.dim() != a.dim())
        throw DimensionMismatch("derivative order / parity point dimension mismatch");
    Scalar total = Scalar::zero(a.kind());
    for (const auto& [k, v] : a.filter()) {
        Scalar term = v;
        if (a.kind() == ScalarKind::exact) {
            mpz_class mono = 1;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                if (mu[i] == 0)
                    continue;
                mpz_class p;
                mpz_class base(static_cast<long>(k[i]));
                mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), mu[i]);
                mono *= p;
            }
            term = term * Scalar(Dyadic(mono));
        } else {
            double mono = 1.0;
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu[i] != 0)
                    mono *= std::pow(static_cast<double>(k[i]), static_cast<double>(mu[i]));
            term = term * Scalar::approx(mono);
        }
        total += gamma.sign_at(k) < 0 ? -term : term;
    }
    return total.mul_pow2(-static_cast<long>(a.dim()));
}

/// tau(pi*gamma) = 2^{-n} sum_k h(k) (-1)^{k.gamma}.
inline Scalar evaluate_at_parity_point(const Mask& a, const ParityPoint& gamma) {
    return derivative_moment(a, std::vector<unsigned>(a.dim(), 0), gamma);
}

/// tau(0).
inline Scalar value_at_origin(const Mask& a) { return a.filter().sum().mul_pow2(-static_cast<long>(a.dim())); }

/// tau(0) == 1, exactly or within float_tolerance.
inline bool is_refinement_mask(const Mask& a) {
    Scalar v = value_at_origin(a);
    if (v.is_exact())
        return v.exact() == Dyadic(1);
    return std::fabs(v.to_double() - 1.0) <= float_tolerance;
}

/// Floating-point evaluation at an arbitrary frequency (diagnostics only).
inline std::complex<double> evaluate(const Mask& a, std::span<const double> omega) {
    if (omega.size() != a.dim())
        throw DimensionMismatch("frequency vector length does not match the mask dimension");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [k, v] : a.filter()) {
        double phase = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i)
            phase += static_cast<double>(k[i]) * omega[i];
        acc += v.to_double() * std::polar(1.0, -phase);
    }
    return std::ldexp(1.0, -static_cast<int>(a.dim())) * acc;
}

/// Even and odd parts (R^e, R^o) of a univariate mask; R = R^e + R^o.
inline std::pair<Mask, Mask> parity_parts(const Mask& r) {
    if (r.dim() != 1)
        throw DimensionMismatch("parity_parts expects a univariate mask");
    Filter even(1, r.kind()), odd(1, r.kind());
    for (const auto& [k, v] : r.filter())
        ((k[0] & 1) ? odd : even).set(k, v);
    return {Mask(std::move(even)), Mask(std::move(odd))};
}

/// Converts every coefficient to binary64.
inline Mask to_float(const Mask& a) {
    Filter f(a.dim(), ScalarKind::approx);
    for (const auto& [k, v] : a.filter())
        f.set(k, Scalar::approx(v.to_double()));
    return Mask(std::move(f));
}

} // namespace cosetsum

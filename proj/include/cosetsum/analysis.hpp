#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cosetsum/errors.hpp"
#include "cosetsum/mask.hpp"

namespace cosetsum {

/// Outcome of an exact (or tolerance-based, for float masks) predicate.
/// In exact mode pass holds iff residual == 0.
struct CheckResult {
    bool pass = true;
    Scalar residual;
    std::optional<Index> witness_index;
    std::optional<ParityPoint> witness_point;
    std::string detail;
};

struct AccuracyReport {
    /// Empty when every moment below the cap vanished.
    std::optional<unsigned> accuracy;
    std::optional<ParityPoint> witness_point;
    std::optional<std::vector<unsigned>> witness_order;
    bool cap_reached() const noexcept { return !accuracy.has_value(); }
};

namespace detail {

// Tracks max |actual - target| over coefficients and remembers the worst index.
class ResidualTracker {
public:
    explicit ResidualTracker(ScalarKind kind) : worst_(Scalar::zero(kind)) {}

    void observe(const Index& k, const Scalar& deviation) {
        Scalar a = deviation.abs();
        if (worst_ < a) {
            worst_ = a;
            where_ = k;
        }
    }
    bool ok() const {
        if (worst_.is_exact())
            return worst_.is_zero();
        return worst_.to_double() <= float_tolerance;
    }
    const Scalar& worst() const noexcept { return worst_; }
    const std::optional<Index>& where() const noexcept { return where_; }

private:
    Scalar worst_;
    std::optional<Index> where_;
};

inline bool all_even(const Index& k) {
    return std::all_of(k.begin(), k.end(), [](auto v) { return (v & 1) == 0; });
}

/// Whether a derivative moment counts as nonzero. Float moments are judged
/// relative to the magnitude of the summands.
inline bool moment_is_nonzero(const Mask& a, const std::vector<unsigned>& mu, const Scalar& m) {
    if (m.is_exact())
        return !m.is_zero();
    double scale = 0.0;
    for (const auto& [k, v] : a.filter()) {
        double mono = 1.0;
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (mu[i])
                mono *= std::pow(std::fabs(static_cast<double>(k[i])), mu[i]);
        scale += std::fabs(v.to_double()) * mono;
    }
    scale = std::ldexp(scale, -static_cast<int>(a.dim()));
    return std::fabs(m.to_double()) > float_tolerance * std::max(1.0, scale);
}

/// Calls fn(mu) for every multi-order mu in N_0^dim with |mu| == order.
template <class Fn>
bool for_each_order(std::size_t dim, unsigned order, Fn&& fn) {
    std::vector<unsigned> mu(dim, 0);
    // Recursive composition enumeration, lexicographically decreasing in mu[0].
    auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> bool {
        if (pos + 1 == dim) {
            mu[pos] = remaining;
            return fn(static_cast<const std::vector<unsigned>&>(mu));
        }
        for (unsigned v = remaining + 1; v-- > 0;) {
            mu[pos] = v;
            if (!self(self, pos + 1, remaining - v))
                return false;
        }
        return true;
    };
    return rec(rec, 0, order);
}

} // namespace detail

/// h(0) = 1 and h(k) = 0 for every k in 2Z^n \ 0.
inline CheckResult is_interpolatory(const Mask& tau) {
    const std::size_t n = tau.dim();
    const Index origin = zero_index(n);
    detail::ResidualTracker tracker(tau.kind());
    detail::ResidualTracker off(tau.kind());
    tracker.observe(origin, tau.filter().at(origin) - Scalar::one(tau.kind()));
    for (const auto& [k, v] : tau.filter())
        if (detail::all_even(k) && !is_zero_index(k)) {
            tracker.observe(k, v);
            off.observe(k, v);
        }
    CheckResult r;
    r.pass = tracker.ok();
    r.residual = tracker.worst();
    if (!r.pass) {
        // a nonzero even tap is reported ahead of the origin
        r.witness_index = off.ok() ? tracker.where() : off.where();
        r.detail = "interpolatory condition violated at k = (" + index_key(*r.witness_index) + ")";
    }
    return r;
}

/// conj(tau) * taud must be interpolatory.
inline CheckResult is_biorthogonal(const Mask& tau, const Mask& taud) {
    if (tau.dim() != taud.dim())
        throw DimensionMismatch("is_biorthogonal: masks of different dimension");
    CheckResult r = is_interpolatory(conjugate(tau) * taud);
    if (!r.pass)
        r.detail = "conj(tau) * taud is not interpolatory at k = (" + index_key(*r.witness_index) + ")";
    return r;
}

/// Order of the common zero of tau at the points of pi*Gamma'.
inline AccuracyReport accuracy_number(const Mask& tau, unsigned cap = 64) {
    const std::size_t n = tau.dim();
    const auto points = nonzero_parity_points(n);
    AccuracyReport report;
    for (unsigned order = 0; order < cap; ++order) {
        for (const auto& gamma : points) {
            bool found = false;
            detail::for_each_order(n, order, [&](const std::vector<unsigned>& mu) {
                Scalar m = derivative_moment(tau, mu, gamma);
                if (detail::moment_is_nonzero(tau, mu, m)) {
                    found = true;
                    report.witness_order = mu;
                    return false;
                }
                return true;
            });
            if (found) {
                report.accuracy = order;
                report.witness_point = gamma;
                return report;
            }
        }
    }
    return report;
}

/// Order of the zero of t at the origin; empty if the cap was reached.
inline std::optional<unsigned> vanishing_moments(const Mask& t, unsigned cap = 64) {
    const std::size_t n = t.dim();
    const ParityPoint origin = ParityPoint::origin(n);
    for (unsigned order = 0; order < cap; ++order) {
        bool found = false;
        detail::for_each_order(n, order, [&](const std::vector<unsigned>& mu) {
            if (detail::moment_is_nonzero(t, mu, derivative_moment(t, mu, origin))) {
                found = true;
                return false;
            }
            return true;
        });
        if (found)
            return order;
    }
    return std::nullopt;
}

/// For every gamma in pi*Gamma, checks
///   conj(tau(w+gamma)) taud(w) + sum_j conj(t_j(w+gamma)) td_j(w) == delta_{gamma,0}
/// coefficient by coefficient.
inline CheckResult muep_verify(const Mask& tau, const std::vector<Mask>& wavelets, const Mask& taud,
                               const std::vector<Mask>& duals) {
    const std::size_t n = tau.dim();
    if (taud.dim() != n)
        throw DimensionMismatch("muep_verify: refinement masks of different dimension");
    if (wavelets.size() != duals.size())
        throw InvalidArgument("muep_verify: wavelet and dual lists differ in length");
    for (std::size_t j = 0; j < wavelets.size(); ++j)
        if (wavelets[j].dim() != n || duals[j].dim() != n)
            throw DimensionMismatch("muep_verify: wavelet mask of the wrong dimension");

    CheckResult result;
    result.residual = Scalar::zero(tau.kind());
    for (const auto& gamma : parity_points(n)) {
        Mask lhs = conjugate(modulate(tau, gamma)) * taud;
        for (std::size_t j = 0; j < wavelets.size(); ++j)
            lhs = lhs + conjugate(modulate(wavelets[j], gamma)) * duals[j];
        Mask target = gamma.is_origin() ? constant(Scalar::one(tau.kind()), n) : zero_mask(n, tau.kind());
        Mask diff = lhs - target;
        detail::ResidualTracker tracker(tau.kind());
        for (const auto& [k, v] : diff.filter())
            tracker.observe(k, v.mul_pow2(-static_cast<long>(n)));
        if (result.residual < tracker.worst())
            result.residual = tracker.worst();
        if (!tracker.ok() && result.pass) {
            result.pass = false;
            result.witness_point = gamma;
            result.witness_index = tracker.where();
            result.detail = "MUEP identity fails at gamma = pi*(" + index_key(gamma.as_index()) +
                            "), coefficient k = (" + index_key(*tracker.where()) + ")";
        }
    }
    return result;
}

} // namespace cosetsum

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "cosetsum/analysis.hpp"
#include "cosetsum/dyadic.hpp"
#include "cosetsum/errors.hpp"
#include "cosetsum/grid.hpp"
#include "cosetsum/mask.hpp"
#include "cosetsum/wavelet_system.hpp"

namespace cosetsum {

enum class TransformMethod { coset, tensor };

inline const char* to_string(TransformMethod m) { return m == TransformMethod::coset ? "coset" : "tensor"; }

// Multiplicative operations (multiplications by a tap equal to 1 are free)
// and the number of input samples fed to decompose.
struct OpCounter {
    std::uint64_t multiplicative_ops = 0;
    std::uint64_t samples_processed = 0;

    void add_ops(std::uint64_t n) { multiplicative_ops += n; }
    void add_samples(std::uint64_t n) { samples_processed += n; }
    bool empty() const noexcept { return samples_processed == 0; }
};

/// ops / samples, kept as the two integers.
struct OpsPerSample {
    std::uint64_t ops = 0;
    std::uint64_t samples = 1;
    double value() const { return static_cast<double>(ops) / static_cast<double>(samples); }
};

inline OpsPerSample measured_complexity(const OpCounter& c) {
    if (c.empty())
        throw PreconditionFailed("measured_complexity: no decomposition recorded");
    return {c.multiplicative_ops, c.samples_processed};
}

// Multi-level transform output. detail[j][i] is w_{nu_i, j} and aux[j] is A_j
// (coset method only); level j grids have per-axis size N / 2^(levels - j).
template <class T>
struct Pyramid {
    TransformMethod method = TransformMethod::coset;
    std::string system_id;
    std::size_t levels = 0;
    std::vector<std::size_t> input_shape;
    std::vector<Index> directions;
    Grid<T> coarse;
    std::vector<std::vector<Grid<T>>> detail;
    std::vector<Grid<T>> aux;
};

namespace detail {

template <class T>
T tap_as(const Scalar& s);
template <>
inline double tap_as<double>(const Scalar& s) { return s.to_double(); }
template <>
inline Dyadic tap_as<Dyadic>(const Scalar& s) {
    if (!s.is_exact())
        throw ScalarKindMismatch("exact-mode transform needs exact filter taps");
    return s.exact();
}

template <class T>
T times_pow2(const T& v, long k) {
    if constexpr (std::is_same_v<T, double>)
        return std::ldexp(v, static_cast<int>(k));
    else
        return v.mul_pow2(k);
}

template <class T>
bool is_unit(const T& v) {
    return v == T(1);
}

inline std::string fingerprint(const Mask& m) {
    // FNV-1a over the printed taps; kind-independent.
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    char buf[64];
    for (const auto& [k, v] : m.filter()) {
        std::snprintf(buf, sizeof buf, "%.17g", v.to_double());
        feed(index_key(k) + ":" + buf + ";");
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline bool is_symmetric(const Mask& m) {
    for (const auto& [k, v] : m.filter()) {
        Scalar w = m.filter().at(Index{-k[0]});
        if (v.is_exact() ? !(v == w) : std::fabs(v.to_double() - w.to_double()) > float_tolerance)
            return false;
    }
    return true;
}

inline void require_divisible(const std::vector<std::size_t>& shape, std::size_t levels) {
    if (levels >= 63)
        throw InvalidArgument("too many levels");
    const std::size_t q = std::size_t{1} << levels;
    for (auto s : shape)
        if (s % q != 0)
            throw InvalidArgument("every axis size must be divisible by 2^levels (" + std::to_string(q) + ")");
}

inline std::vector<std::size_t> halve(std::vector<std::size_t> shape) {
    for (auto& s : shape)
        s /= 2;
    return shape;
}

/// Calls fn(k, linear) over every point of the shape in row-major order.
template <class Fn>
void for_each_point(const std::vector<std::size_t>& shape, Fn&& fn) {
    Index k(shape.size(), 0);
    std::size_t total = 1;
    for (auto s : shape)
        total *= s;
    for (std::size_t lin = 0; lin < total; ++lin) {
        fn(static_cast<const Index&>(k), lin);
        for (std::size_t i = shape.size(); i-- > 0;) {
            if (++k[i] < static_cast<std::int64_t>(shape[i]))
                break;
            k[i] = 0;
        }
    }
}

template <class T>
struct Tap {
    Index offset;
    T value;
};

/// Precomputed tap tables of the fast coset algorithm.
template <class T>
struct CosetPlan {
    std::size_t dim = 0;
    std::vector<Index> directions;
    std::vector<Tap<T>> coarse_taps;               // step (i), before the 2^-n
    std::vector<std::vector<Tap<T>>> odd_taps;     // per nu: ((1-m)nu, H(m)), m odd
    std::uint64_t ops_coarse = 0;                  // per entry of y_{j-1}
    std::uint64_t ops_odd = 0;                     // per entry of w, step (ii) or (iv)
};

inline void require_coset_filters(const Mask& g, const Mask& h) {
    if (g.dim() != 1 || h.dim() != 1)
        throw DimensionMismatch("coset transform: G and H must be univariate");
    if (!is_symmetric(g) || !is_symmetric(h))
        throw PreconditionFailed("coset transform: G and H must be symmetric");
    if (!is_interpolatory(h).pass)
        throw PreconditionFailed("coset transform: H must be interpolatory");
}

template <class T>
CosetPlan<T> make_coset_plan(const Mask& g, const Mask& h, std::size_t dim, bool with_g) {
    CosetPlan<T> plan;
    plan.dim = dim;
    plan.directions = standard_directions(dim);
    const long p = static_cast<long>(std::size_t{1} << dim);
    if (with_g) {
        // a_G = -2^n + 2 + (2^n - 1) G(0)
        T a_g = T(static_cast<int>(2 - p)) + T(static_cast<int>(p - 1)) * tap_as<T>(g.filter().at(Index{0}));
        plan.coarse_taps.push_back({zero_index(dim), a_g});
        for (const auto& nu : plan.directions)
            for (const auto& [l, v] : g.filter()) {
                if (l[0] == 0)
                    continue;
                Index off(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    off[i] = l[0] * nu[i];
                plan.coarse_taps.push_back({off, tap_as<T>(v)});
            }
        for (const auto& t : plan.coarse_taps)
            if (!is_unit(t.value))
                ++plan.ops_coarse;
        plan.ops_coarse += dim; // 2^-n, one halving per axis
    }
    std::uint64_t odd_count = 0;
    for (const auto& nu : plan.directions) {
        std::vector<Tap<T>> taps;
        for (const auto& [m, v] : h.filter()) {
            if ((m[0] & 1) == 0)
                continue;
            Index off(dim);
            for (std::size_t i = 0; i < dim; ++i)
                off[i] = (1 - m[0]) * nu[i];
            taps.push_back({off, tap_as<T>(v)});
        }
        odd_count = 0;
        for (const auto& t : taps)
            if (!is_unit(t.value))
                ++odd_count;
        plan.odd_taps.push_back(std::move(taps));
    }
    plan.ops_odd = odd_count + 1; // the 1/2 of (ii) or the 2 of (iv)
    return plan;
}

inline Index twice_plus(const Index& k, const Index& off) {
    Index r(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        r[i] = 2 * k[i] + off[i];
    return r;
}

template <class T>
std::size_t total_size(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (auto s : shape)
        n *= s;
    return n;
}

} // namespace detail

/// System id recorded in a pyramid, e.g. "coset:G=<hash>:H=<hash>".
inline std::string transform_system_id(TransformMethod method, const Mask& first, const Mask& second) {
    if (method == TransformMethod::coset)
        return "coset:G=" + detail::fingerprint(first) + ":H=" + detail::fingerprint(second);
    return "tensor:S=" + detail::fingerprint(first) + ":U=" + detail::fingerprint(second);
}

/// Fast coset sum decomposition, steps (i)-(iii) over a periodic grid.
/// G and H are the filters of S and U (symmetric, U interpolatory).
template <class T>
Pyramid<T> coset_decompose(const Grid<T>& y, const Mask& g, const Mask& h, std::size_t levels,
                           OpCounter* counter = nullptr) {
    detail::require_coset_filters(g, h);
    detail::require_divisible(y.shape(), levels);
    const std::size_t n = y.dim();
    const auto plan = detail::make_coset_plan<T>(g, h, n, true);

    Pyramid<T> out;
    out.method = TransformMethod::coset;
    out.system_id = transform_system_id(TransformMethod::coset, g, h);
    out.levels = levels;
    out.input_shape = y.shape();
    out.directions = plan.directions;
    out.detail.resize(levels);
    out.aux.resize(levels);
    if (counter)
        counter->add_samples(y.size());

    Grid<T> cur = y;
    for (std::size_t j = levels; j-- > 0;) {
        const auto cshape = detail::halve(cur.shape());
        Grid<T> coarse(cshape);
        Grid<T> aux(cshape);
        std::vector<Grid<T>> w(plan.directions.size(), Grid<T>(cshape));
        detail::for_each_point(cshape, [&](const Index& k, std::size_t lin) {
            // (i)
            T acc{};
            for (const auto& t : plan.coarse_taps) {
                const T& v = cur.at(detail::twice_plus(k, t.offset));
                acc += detail::is_unit(t.value) ? v : t.value * v;
            }
            coarse[lin] = detail::times_pow2(acc, -static_cast<long>(n));
            // (ii)
            for (std::size_t d = 0; d < plan.directions.size(); ++d) {
                T s = cur.at(detail::twice_plus(k, plan.directions[d]));
                for (const auto& t : plan.odd_taps[d]) {
                    const T& v = cur.at(detail::twice_plus(k, t.offset));
                    s -= detail::is_unit(t.value) ? v : t.value * v;
                }
                w[d][lin] = detail::times_pow2(s, -1);
            }
            // A_{j-1}(k) = y_j(2k) - y_{j-1}(k)
            aux[lin] = cur.at(detail::twice_plus(k, zero_index(n))) - coarse[lin];
        });
        if (counter) {
            const std::uint64_t m = coarse.size();
            counter->add_ops(m * plan.ops_coarse + m * plan.directions.size() * plan.ops_odd);
        }
        out.detail[j] = std::move(w);
        out.aux[j] = std::move(aux);
        cur = std::move(coarse);
    }
    out.coarse = std::move(cur);
    return out;
}

namespace detail {
template <class T>
void check_pyramid_shapes(const Pyramid<T>& p, std::size_t bands, bool with_aux) {
    if (p.input_shape.empty())
        throw InvalidArgument("pyramid has no input shape");
    require_divisible(p.input_shape, p.levels);
    if (p.detail.size() != p.levels || (with_aux && p.aux.size() != p.levels))
        throw InvalidArgument("pyramid level count does not match its bands");
    auto shape = p.input_shape;
    for (std::size_t l = 0; l < p.levels; ++l)
        shape = halve(shape);
    if (p.coarse.shape() != shape)
        throw InvalidArgument("pyramid coarse band has the wrong shape");
    for (std::size_t j = 0; j < p.levels; ++j) {
        if (p.detail[j].size() != bands)
            throw InvalidArgument("pyramid level " + std::to_string(j) + " has the wrong number of bands");
        for (const auto& b : p.detail[j])
            if (b.shape() != shape)
                throw InvalidArgument("pyramid detail band has the wrong shape");
        if (with_aux && p.aux[j].shape() != shape)
            throw InvalidArgument("pyramid auxiliary band has the wrong shape");
        for (auto& s : shape)
            s *= 2;
    }
}
} // namespace detail

/// Fast coset sum reconstruction, steps (iii)-(iv). Only H is needed.
template <class T>
Grid<T> coset_reconstruct(const Pyramid<T>& p, const Mask& h, OpCounter* counter = nullptr) {
    if (p.method != TransformMethod::coset)
        throw InvalidArgument("coset_reconstruct: pyramid was produced by the tensor method");
    detail::require_coset_filters(h, h);
    const std::size_t n = p.input_shape.size();
    if (!p.system_id.empty() && !p.system_id.ends_with(":H=" + detail::fingerprint(h)))
        throw InvalidArgument("coset_reconstruct: pyramid was produced with a different H");
    detail::check_pyramid_shapes(p, (std::size_t{1} << n) - 1, true);
    const auto plan = detail::make_coset_plan<T>(h, h, n, false);

    Grid<T> cur = p.coarse;
    for (std::size_t j = 0; j < p.levels; ++j) {
        auto fshape = cur.shape();
        for (auto& s : fshape)
            s *= 2;
        Grid<T> fine(fshape);
        const auto& w = p.detail[j];
        const auto& aux = p.aux[j];
        // (iii)
        detail::for_each_point(cur.shape(), [&](const Index& k, std::size_t lin) {
            fine.at(detail::twice_plus(k, zero_index(n))) = aux[lin] + cur[lin];
        });
        // (iv): (1-m)nu is even, so only points set in (iii) are read.
        detail::for_each_point(cur.shape(), [&](const Index& k, std::size_t lin) {
            for (std::size_t d = 0; d < plan.directions.size(); ++d) {
                T s = detail::times_pow2(w[d][lin], 1);
                for (const auto& t : plan.odd_taps[d]) {
                    const T& v = fine.at(detail::twice_plus(k, t.offset));
                    s += detail::is_unit(t.value) ? v : t.value * v;
                }
                fine.at(detail::twice_plus(k, plan.directions[d])) = std::move(s);
            }
        });
        if (counter)
            counter->add_ops(static_cast<std::uint64_t>(cur.size()) * plan.directions.size() * plan.ops_odd);
        cur = std::move(fine);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Separable tensor product transform.

namespace detail {

struct TensorFilters {
    std::vector<std::pair<std::int64_t, Scalar>> lo_analysis, hi_analysis;   // Laurent coefficients of S0, S1
    std::vector<std::pair<std::int64_t, Scalar>> lo_synthesis, hi_synthesis; // filters of U0, U1
};

inline TensorFilters make_tensor_filters(const Mask& s0, const Mask& u0) {
    require_biorthogonal(s0, u0, "tensor transform");
    TensorFilters f;
    auto laurent = [](const Mask& m) {
        std::vector<std::pair<std::int64_t, Scalar>> out;
        for (const auto& [k, v] : m.filter())
            out.emplace_back(k[0], v.mul_pow2(-1));
        return out;
    };
    auto taps = [](const Mask& m) {
        std::vector<std::pair<std::int64_t, Scalar>> out;
        for (const auto& [k, v] : m.filter())
            out.emplace_back(k[0], v);
        return out;
    };
    f.lo_analysis = laurent(s0);
    f.hi_analysis = laurent(univariate_wavelet_from(u0));
    f.lo_synthesis = taps(u0);
    f.hi_synthesis = taps(univariate_wavelet_from(s0));
    return f;
}

template <class T>
std::vector<std::pair<std::int64_t, T>> convert_taps(const std::vector<std::pair<std::int64_t, Scalar>>& in) {
    std::vector<std::pair<std::int64_t, T>> out;
    for (const auto& [k, v] : in)
        out.emplace_back(k, tap_as<T>(v));
    return out;
}

inline std::int64_t wrap(std::int64_t i, std::int64_t n) {
    i %= n;
    return i < 0 ? i + n : i;
}

/// Calls fn(base) for the first element of every line along axis a.
template <class T, class Fn>
void for_each_line(const Grid<T>& g, std::size_t a, Fn&& fn) {
    const std::size_t stride = g.strides()[a];
    const std::size_t block = stride * g.shape()[a];
    for (std::size_t o = 0; o < g.size(); o += block)
        for (std::size_t i = 0; i < stride; ++i)
            fn(o + i);
}

template <class T>
struct TensorPlan {
    std::vector<std::pair<std::int64_t, T>> la, ha, ls, hs;
    std::uint64_t ops_analysis = 0;  // per (low, high) output pair
    std::uint64_t ops_synthesis = 0; // per pair of reconstructed samples
};

template <class T>
TensorPlan<T> make_tensor_plan(const Mask& s0, const Mask& u0) {
    const auto f = make_tensor_filters(s0, u0);
    TensorPlan<T> plan{convert_taps<T>(f.lo_analysis), convert_taps<T>(f.hi_analysis),
                       convert_taps<T>(f.lo_synthesis), convert_taps<T>(f.hi_synthesis)};
    auto non_unit = [](const auto& taps) {
        std::uint64_t c = 0;
        for (const auto& t : taps)
            if (!is_unit(t.second))
                ++c;
        return c;
    };
    plan.ops_analysis = non_unit(plan.la) + non_unit(plan.ha);
    // Each tap is used for exactly one of the two output parities.
    plan.ops_synthesis = non_unit(plan.ls) + non_unit(plan.hs);
    return plan;
}

template <class T>
void analyse_axis(Grid<T>& g, std::size_t a, const TensorPlan<T>& plan) {
    const auto len = static_cast<std::int64_t>(g.shape()[a]);
    const std::int64_t half = len / 2;
    const std::size_t stride = g.strides()[a];
    std::vector<T> line(len);
    for_each_line(g, a, [&](std::size_t base) {
        for (std::int64_t i = 0; i < len; ++i)
            line[i] = g[base + i * stride];
        for (std::int64_t k = 0; k < half; ++k) {
            T lo{}, hi{};
            for (const auto& [m, c] : plan.la)
                lo += is_unit(c) ? line[wrap(2 * k + m, len)] : c * line[wrap(2 * k + m, len)];
            for (const auto& [m, c] : plan.ha)
                hi += is_unit(c) ? line[wrap(2 * k + m, len)] : c * line[wrap(2 * k + m, len)];
            g[base + k * stride] = std::move(lo);
            g[base + (half + k) * stride] = std::move(hi);
        }
    });
}

template <class T>
void synthesise_axis(Grid<T>& g, std::size_t a, const TensorPlan<T>& plan) {
    const auto len = static_cast<std::int64_t>(g.shape()[a]);
    const std::int64_t half = len / 2;
    const std::size_t stride = g.strides()[a];
    std::vector<T> lo(half), hi(half);
    for_each_line(g, a, [&](std::size_t base) {
        for (std::int64_t k = 0; k < half; ++k) {
            lo[k] = g[base + k * stride];
            hi[k] = g[base + (half + k) * stride];
        }
        for (std::int64_t p = 0; p < len; ++p) {
            T x{};
            for (const auto& [m, c] : plan.ls)
                if (((p - m) & 1) == 0) {
                    const T& v = lo[wrap((p - m) / 2, half)];
                    x += is_unit(c) ? v : c * v;
                }
            for (const auto& [m, c] : plan.hs)
                if (((p - m) & 1) == 0) {
                    const T& v = hi[wrap((p - m) / 2, half)];
                    x += is_unit(c) ? v : c * v;
                }
            g[base + p * stride] = std::move(x);
        }
    });
}

/// Copies the sub-block at the given per-axis offsets out of (or into) g.
template <class T>
Grid<T> extract_block(const Grid<T>& g, const std::vector<std::size_t>& bshape, const Index& corner) {
    Grid<T> out(bshape);
    for_each_point(bshape, [&](const Index& k, std::size_t lin) {
        Index q(k.size());
        for (std::size_t i = 0; i < k.size(); ++i)
            q[i] = k[i] + corner[i];
        out[lin] = g.at(q);
    });
    return out;
}

template <class T>
void insert_block(Grid<T>& g, const Grid<T>& b, const Index& corner) {
    for_each_point(b.shape(), [&](const Index& k, std::size_t lin) {
        Index q(k.size());
        for (std::size_t i = 0; i < k.size(); ++i)
            q[i] = k[i] + corner[i];
        g.at(q) = b[lin];
    });
}

inline Index band_corner(const Index& nu, const std::vector<std::size_t>& bshape) {
    Index c(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        c[i] = nu[i] * static_cast<std::int64_t>(bshape[i]);
    return c;
}

} // namespace detail

/// Separable analysis with (S0, S1), S1(w) = e^{-iw} conj(U0(w+pi)), one axis
/// at a time; 2^n subbands per level.
template <class T>
Pyramid<T> tensor_decompose(const Grid<T>& y, const Mask& s0, const Mask& u0, std::size_t levels,
                            OpCounter* counter = nullptr) {
    detail::require_divisible(y.shape(), levels);
    const auto plan = detail::make_tensor_plan<T>(s0, u0);
    const std::size_t n = y.dim();
    Pyramid<T> out;
    out.method = TransformMethod::tensor;
    out.system_id = transform_system_id(TransformMethod::tensor, s0, u0);
    out.levels = levels;
    out.input_shape = y.shape();
    out.directions = detail::standard_directions(n);
    out.detail.resize(levels);
    if (counter)
        counter->add_samples(y.size());

    Grid<T> cur = y;
    for (std::size_t j = levels; j-- > 0;) {
        for (std::size_t a = 0; a < n; ++a)
            detail::analyse_axis(cur, a, plan);
        if (counter)
            counter->add_ops(static_cast<std::uint64_t>(n) * (cur.size() / 2) * plan.ops_analysis);
        const auto bshape = detail::halve(cur.shape());
        for (const auto& nu : out.directions)
            out.detail[j].push_back(detail::extract_block(cur, bshape, detail::band_corner(nu, bshape)));
        cur = detail::extract_block(cur, bshape, zero_index(n));
    }
    out.coarse = std::move(cur);
    return out;
}

/// Separable synthesis with the dual pair (U0, U1), U1(w) = e^{-iw} conj(S0(w+pi)).
template <class T>
Grid<T> tensor_reconstruct(const Pyramid<T>& p, const Mask& s0, const Mask& u0, OpCounter* counter = nullptr) {
    if (p.method != TransformMethod::tensor)
        throw InvalidArgument("tensor_reconstruct: pyramid was produced by the coset method");
    if (!p.system_id.empty() && p.system_id != transform_system_id(TransformMethod::tensor, s0, u0))
        throw InvalidArgument("tensor_reconstruct: pyramid was produced with different filters");
    const std::size_t n = p.input_shape.size();
    detail::check_pyramid_shapes(p, (std::size_t{1} << n) - 1, false);
    const auto plan = detail::make_tensor_plan<T>(s0, u0);

    Grid<T> cur = p.coarse;
    for (std::size_t j = 0; j < p.levels; ++j) {
        const auto bshape = cur.shape();
        auto fshape = bshape;
        for (auto& s : fshape)
            s *= 2;
        Grid<T> fine(fshape);
        detail::insert_block(fine, cur, zero_index(n));
        for (std::size_t d = 0; d < p.directions.size(); ++d)
            detail::insert_block(fine, p.detail[j][d], detail::band_corner(p.directions[d], bshape));
        for (std::size_t a = n; a-- > 0;)
            detail::synthesise_axis(fine, a, plan);
        if (counter)
            counter->add_ops(static_cast<std::uint64_t>(n) * (fine.size() / 2) * plan.ops_synthesis);
        cur = std::move(fine);
    }
    return cur;
}

} // namespace cosetsum

#pragma once

#include <random>
#include <string>
#include <vector>

#include "cosetsum/cosetsum.hpp"

namespace cosetsum::testkit {

/// 2-D filter from a printed table: rows run from y = top down, columns from
/// x = left rightwards; entries are numerators over 2^exp. Index is (x, y).
inline Filter table_2d(const std::vector<std::vector<long>>& rows, std::int64_t top, std::int64_t left,
                       unsigned long exp) {
    Filter f(2);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            f.set({left + static_cast<std::int64_t>(c), top - static_cast<std::int64_t>(r)}, dyadic(rows[r][c], exp));
    return f;
}

inline Filter row_1d(const std::vector<long>& taps, std::int64_t first, unsigned long exp) {
    Filter f(1);
    for (std::size_t i = 0; i < taps.size(); ++i)
        f.set({first + static_cast<std::int64_t>(i)}, dyadic(taps[i], exp));
    return f;
}

inline Dyadic random_dyadic(std::mt19937_64& rng, long range = 20, unsigned long max_exp = 5) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<unsigned long> ex(0, max_exp);
    return dyadic(num(rng), ex(rng));
}

/// Random small exact filter with up to `taps` entries in [-radius, radius]^dim.
inline Mask random_mask(std::mt19937_64& rng, std::size_t dim, int taps = 5, int radius = 3) {
    std::uniform_int_distribution<int> pos(-radius, radius);
    Filter f(dim);
    for (int t = 0; t < taps; ++t) {
        Index k(dim);
        for (auto& v : k)
            v = pos(rng);
        f.set(k, random_dyadic(rng));
    }
    return Mask(std::move(f));
}

/// Random univariate refinement mask: random taps, then the origin tap is
/// adjusted so the filter sums to 2.
inline Mask random_refinement_mask(std::mt19937_64& rng, int taps = 4, int radius = 3) {
    Filter f = random_mask(rng, 1, taps, radius).filter();
    Scalar rest = f.sum() - f.at(Index{0});
    f.set({0}, Scalar(2) - rest);
    return Mask(std::move(f));
}

template <class T>
Grid<T> random_grid(std::mt19937_64& rng, const std::vector<std::size_t>& shape);

template <>
inline Grid<Dyadic> random_grid<Dyadic>(std::mt19937_64& rng, const std::vector<std::size_t>& shape) {
    Grid<Dyadic> g(shape);
    for (auto& v : g.values())
        v = random_dyadic(rng, 1000, 10);
    return g;
}

template <>
inline Grid<double> random_grid<double>(std::mt19937_64& rng, const std::vector<std::size_t>& shape) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Grid<double> g(shape);
    for (auto& v : g.values())
        v = d(rng);
    return g;
}

/// Direct correlation with the Laurent coefficients of a mask followed by
/// downsampling: c(k) = sum_m coeff(m) y(2k + m), periodic.
inline Grid<Dyadic> naive_analysis(const Grid<Dyadic>& y, const Mask& m) {
    auto shape = y.shape();
    for (auto& s : shape)
        s /= 2;
    Grid<Dyadic> out(shape);
    for (std::size_t lin = 0; lin < out.size(); ++lin) {
        Index k = out.point(lin);
        Dyadic acc;
        for (const auto& [off, v] : m.filter()) {
            Index q(k.size());
            for (std::size_t i = 0; i < k.size(); ++i)
                q[i] = 2 * k[i] + off[i];
            acc += m.coefficient(off).exact() * y.at(q);
        }
        out[lin] = acc;
    }
    return out;
}

/// Upsampling synthesis with dual masks: y(p) = 2^n sum_bands sum_k coeff(p - 2k) band(k).
inline Grid<Dyadic> naive_synthesis(const std::vector<Grid<Dyadic>>& bands, const std::vector<Mask>& duals) {
    auto shape = bands.front().shape();
    const std::size_t n = shape.size();
    for (auto& s : shape)
        s *= 2;
    Grid<Dyadic> out(shape);
    for (std::size_t b = 0; b < bands.size(); ++b) {
        for (std::size_t lin = 0; lin < bands[b].size(); ++lin) {
            Index k = bands[b].point(lin);
            const Dyadic& v = bands[b][lin];
            if (v.is_zero())
                continue;
            for (const auto& [off, c] : duals[b].filter()) {
                Index p(n);
                for (std::size_t i = 0; i < n; ++i)
                    p[i] = 2 * k[i] + off[i];
                // 2^n * coefficient = filter value
                out.at(p) += c.exact() * v;
            }
        }
    }
    return out;
}

/// Literal transcription of steps (i) and (ii) on an unbounded index set,
/// evaluated with periodic wrap. Loops over every direction and every filter
/// tap without any precomputed tables.
inline std::pair<Grid<Dyadic>, std::vector<Grid<Dyadic>>> naive_coset_step(const Grid<Dyadic>& y, const Mask& s,
                                                                          const Mask& u) {
    const std::size_t n = y.dim();
    auto shape = y.shape();
    for (auto& v : shape)
        v /= 2;
    const long p = 1L << n;
    const Dyadic a_g = Dyadic(-p + 2) + Dyadic(p - 1) * s.filter().at(Index{0}).exact();
    std::vector<Index> dirs;
    for (const auto& g : nonzero_parity_points(n))
        dirs.push_back(g.as_index());
    Grid<Dyadic> coarse(shape);
    std::vector<Grid<Dyadic>> w(dirs.size(), Grid<Dyadic>(shape));
    for (std::size_t lin = 0; lin < coarse.size(); ++lin) {
        Index k = coarse.point(lin);
        Index two_k(n);
        for (std::size_t i = 0; i < n; ++i)
            two_k[i] = 2 * k[i];
        Dyadic acc = a_g * y.at(two_k);
        for (const auto& nu : dirs)
            for (std::int64_t l = -64; l <= 64; ++l) {
                if (l == 0)
                    continue;
                Dyadic g = s.filter().at(Index{l}).exact();
                if (g.is_zero())
                    continue;
                Index q(n);
                for (std::size_t i = 0; i < n; ++i)
                    q[i] = two_k[i] + l * nu[i];
                acc += g * y.at(q);
            }
        coarse[lin] = acc.mul_pow2(-static_cast<long>(n));
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            Index q(n);
            for (std::size_t i = 0; i < n; ++i)
                q[i] = two_k[i] + dirs[d][i];
            Dyadic sum = y.at(q);
            for (std::int64_t m = -63; m <= 63; m += 2) {
                Dyadic h = u.filter().at(Index{m}).exact();
                if (h.is_zero())
                    continue;
                for (std::size_t i = 0; i < n; ++i)
                    q[i] = two_k[i] + (1 - m) * dirs[d][i];
                sum -= h * y.at(q);
            }
            w[d][lin] = sum.mul_pow2(-1);
        }
    }
    return {coarse, w};
}

inline double max_abs_diff(const Grid<double>& a, const Grid<double>& b) {
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e = std::max(e, std::fabs(a[i] - b[i]));
    return e;
}

inline double max_abs(const Grid<double>& a) {
    double e = 0;
    for (double v : a.values())
        e = std::max(e, std::fabs(v));
    return e;
}

} // namespace cosetsum::testkit

#include <gtest/gtest.h>

#include <random>

#include "cosetsum/catalog.hpp"
#include "cosetsum/transform.hpp"
#include "support.hpp"

using namespace cosetsum;
namespace t = cosetsum::testkit;

namespace {
struct Pair {
    Mask s, u;
};

Pair dd(unsigned k) { return {catalog::dd_dual(k), catalog::deslauriers_dubuc(k)}; }

std::vector<std::size_t> cube(std::size_t n, std::size_t side) { return std::vector<std::size_t>(n, side); }

Grid<Dyadic> impulse(const std::vector<std::size_t>& shape, const Index& at) {
    Grid<Dyadic> g(shape);
    g.at(at) = Dyadic(1);
    return g;
}
} // namespace

TEST(CosetTransform, ConstantGrid) {
    auto [s, u] = dd(2);
    for (std::size_t n : {1, 2, 3}) {
        Grid<Dyadic> y(cube(n, 8), dyadic(5, 2));
        auto p = coset_decompose(y, s, u, 2);
        for (const auto& lvl : p.detail)
            for (const auto& b : lvl)
                for (const auto& v : b.values())
                    EXPECT_TRUE(v.is_zero());
        for (const auto& a : p.aux)
            for (const auto& v : a.values())
                EXPECT_TRUE(v.is_zero());
        for (const auto& v : p.coarse.values())
            EXPECT_EQ(v, dyadic(5, 2));
    }
}

TEST(CosetTransform, ZeroLevels) {
    auto [s, u] = dd(1);
    std::mt19937_64 rng(1);
    auto y = t::random_grid<Dyadic>(rng, {6, 10});
    auto p = coset_decompose(y, s, u, 0);
    EXPECT_EQ(p.coarse, y);
    EXPECT_TRUE(p.detail.empty());
    EXPECT_TRUE(p.aux.empty());
    EXPECT_EQ(coset_reconstruct(p, u), y);
}

TEST(CosetTransform, ImpulseMatchesDirectSteps) {
    auto [s, u] = dd(2);
    for (const Index& at : {Index{0, 0}, Index{3, 5}, Index{7, 2}}) {
        auto y = impulse({8, 8}, at);
        auto p = coset_decompose(y, s, u, 1);
        auto [coarse, w] = t::naive_coset_step(y, s, u);
        EXPECT_EQ(p.coarse, coarse);
        ASSERT_EQ(p.detail[0].size(), w.size());
        for (std::size_t d = 0; d < w.size(); ++d)
            EXPECT_EQ(p.detail[0][d], w[d]) << "band " << d;
    }
}

TEST(CosetTransform, BandsAreCorrelationsWithSystemMasks) {
    for (unsigned k : {1u, 2u})
        for (std::size_t n : {1, 2, 3}) {
            auto [s, u] = dd(k);
            auto sys = build_coset_system(s, u, n);
            std::mt19937_64 rng(k * 10 + n);
            auto y = t::random_grid<Dyadic>(rng, cube(n, n == 3 ? 8 : 16));
            auto p = coset_decompose(y, s, u, 1);
            EXPECT_EQ(p.coarse, t::naive_analysis(y, sys.tau)) << "n=" << n << " k=" << k;
            for (std::size_t d = 0; d < sys.directions.size(); ++d)
                EXPECT_EQ(p.detail[0][d], t::naive_analysis(y, sys.wavelets[d])) << "n=" << n << " d=" << d;
        }
}

TEST(CosetTransform, DualMasksSynthesise) {
    auto [s, u] = dd(2);
    for (std::size_t n : {1, 2}) {
        auto sys = build_coset_system(s, u, n);
        std::mt19937_64 rng(40 + n);
        auto y = t::random_grid<Dyadic>(rng, cube(n, 16));
        std::vector<Grid<Dyadic>> bands{t::naive_analysis(y, sys.tau)};
        std::vector<Mask> duals{sys.taud};
        for (std::size_t d = 0; d < sys.directions.size(); ++d) {
            bands.push_back(t::naive_analysis(y, sys.wavelets[d]));
            duals.push_back(sys.duals[d]);
        }
        EXPECT_EQ(t::naive_synthesis(bands, duals), y) << "n=" << n;
    }
}

TEST(CosetTransform, ExactRoundTrips) {
    for (unsigned k : {1u, 2u, 3u})
        for (std::size_t n : {1, 2, 3})
            for (std::size_t levels : {1, 2}) {
                auto [s, u] = dd(k);
                std::mt19937_64 rng(k * 100 + n * 10 + levels);
                auto y = t::random_grid<Dyadic>(rng, cube(n, n == 3 ? 8 : 16));
                auto p = coset_decompose(y, s, u, levels);
                EXPECT_EQ(coset_reconstruct(p, u), y) << "k=" << k << " n=" << n << " J=" << levels;
            }
}

TEST(CosetTransform, NonCubicShape) {
    auto [s, u] = dd(2);
    std::mt19937_64 rng(9);
    auto y = t::random_grid<Dyadic>(rng, {8, 16, 4});
    auto p = coset_decompose(y, s, u, 2);
    EXPECT_EQ(p.coarse.shape(), (std::vector<std::size_t>{2, 4, 1}));
    EXPECT_EQ(p.detail[0][0].shape(), (std::vector<std::size_t>{2, 4, 1}));
    EXPECT_EQ(p.detail[1][0].shape(), (std::vector<std::size_t>{4, 8, 2}));
    EXPECT_EQ(coset_reconstruct(p, u), y);
}

TEST(CosetTransform, FloatRoundTrip) {
    auto [s, u] = dd(2);
    std::mt19937_64 rng(64);
    auto y = t::random_grid<double>(rng, {64, 64});
    auto p = coset_decompose(y, to_float(s), to_float(u), 3);
    auto back = coset_reconstruct(p, to_float(u));
    EXPECT_LE(t::max_abs_diff(back, y) / t::max_abs(y), 1e-10);
}

TEST(CosetTransform, FloatMatchesExact) {
    auto [s, u] = dd(2);
    std::mt19937_64 rng(65);
    auto ye = t::random_grid<Dyadic>(rng, {16, 16});
    auto yf = map_grid<double>(ye, [](const Dyadic& v) { return v.to_double(); });
    auto pe = coset_decompose(ye, s, u, 2);
    auto pf = coset_decompose(yf, s, u, 2);
    for (std::size_t i = 0; i < pe.coarse.size(); ++i)
        EXPECT_NEAR(pe.coarse[i].to_double(), pf.coarse[i], 1e-12);
    for (std::size_t d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < pe.detail[1][d].size(); ++i)
            EXPECT_NEAR(pe.detail[1][d][i].to_double(), pf.detail[1][d][i], 1e-12);
}

TEST(CosetTransform, ZeroPyramid) {
    auto [s, u] = dd(2);
    auto p = coset_decompose(Grid<double>({16, 16}), s, u, 2);
    for (auto& v : p.coarse.values())
        v = 0;
    auto y = coset_reconstruct(p, u);
    EXPECT_EQ(t::max_abs(y), 0.0);
}

TEST(CosetTransform, Errors) {
    auto [s, u] = dd(2);
    Grid<Dyadic> y({8, 8});
    EXPECT_THROW(coset_decompose(y, catalog::haar(), catalog::haar(), 1), PreconditionFailed);
    EXPECT_THROW(coset_decompose(y, u, s, 1), PreconditionFailed);
    EXPECT_THROW(coset_decompose(Grid<Dyadic>({12, 8}), s, u, 3), InvalidArgument);
    EXPECT_THROW(coset_decompose(y, to_float(s), u, 1), ScalarKindMismatch);
    auto p = coset_decompose(y, s, u, 2);
    EXPECT_THROW(coset_reconstruct(p, catalog::deslauriers_dubuc(1)), InvalidArgument);
    auto broken = p;
    broken.detail[0].pop_back();
    EXPECT_THROW(coset_reconstruct(broken, u), InvalidArgument);
    broken = p;
    broken.aux[1] = Grid<Dyadic>({2, 2});
    EXPECT_THROW(coset_reconstruct(broken, u), InvalidArgument);
    broken = p;
    broken.method = TransformMethod::tensor;
    EXPECT_THROW(coset_reconstruct(broken, u), InvalidArgument);
}

TEST(TensorTransform, HaarConstant) {
    Grid<Dyadic> y({8, 8}, Dyadic(3));
    auto p = tensor_decompose(y, catalog::haar(), catalog::haar(), 3);
    for (const auto& lvl : p.detail)
        for (const auto& b : lvl)
            for (const auto& v : b.values())
                EXPECT_TRUE(v.is_zero());
    ASSERT_EQ(p.coarse.size(), 1u);
    EXPECT_EQ(p.coarse[0], Dyadic(3));
    EXPECT_TRUE(p.aux.empty());
}

TEST(TensorTransform, OneDimensionMatchesFilterBank) {
    auto [s, u] = dd(2);
    auto sys = build_1d_system(s, u);
    std::mt19937_64 rng(70);
    auto y = t::random_grid<Dyadic>(rng, {32});
    auto p = tensor_decompose(y, s, u, 1);
    EXPECT_EQ(p.coarse, t::naive_analysis(y, s));
    EXPECT_EQ(p.detail[0][0], t::naive_analysis(y, sys.wavelets[0]));
    EXPECT_EQ(t::naive_synthesis({p.coarse, p.detail[0][0]}, {u, sys.duals[0]}), y);
}

TEST(TensorTransform, BandsAreCorrelationsWithSystemMasks) {
    auto [s, u] = dd(1);
    for (std::size_t n : {2, 3}) {
        auto sys = build_tensor_system(s, u, n);
        std::mt19937_64 rng(71 + n);
        auto y = t::random_grid<Dyadic>(rng, cube(n, 8));
        auto p = tensor_decompose(y, s, u, 1);
        EXPECT_EQ(p.coarse, t::naive_analysis(y, sys.tau));
        for (std::size_t d = 0; d < sys.directions.size(); ++d)
            EXPECT_EQ(p.detail[0][d], t::naive_analysis(y, sys.wavelets[d])) << "n=" << n << " d=" << d;
    }
}

TEST(TensorTransform, ExactRoundTrips) {
    std::vector<Pair> pairs{{catalog::haar(), catalog::haar()}, dd(1), dd(2)};
    for (const auto& pr : pairs)
        for (std::size_t n : {1, 2, 3})
            for (std::size_t levels : {1, 2}) {
                std::mt19937_64 rng(n * 10 + levels);
                auto y = t::random_grid<Dyadic>(rng, cube(n, n == 3 ? 8 : 16));
                auto p = tensor_decompose(y, pr.s, pr.u, levels);
                EXPECT_EQ(tensor_reconstruct(p, pr.s, pr.u), y) << "n=" << n << " J=" << levels;
            }
}

TEST(TensorTransform, FloatRoundTrip) {
    auto [s, u] = dd(2);
    std::mt19937_64 rng(72);
    auto y = t::random_grid<double>(rng, {64, 64});
    auto p = tensor_decompose(y, s, u, 2);
    EXPECT_LE(t::max_abs_diff(tensor_reconstruct(p, s, u), y) / t::max_abs(y), 1e-10);
}

TEST(TensorTransform, Errors) {
    auto [s, u] = dd(2);
    EXPECT_THROW(tensor_decompose(Grid<double>({8, 8}), catalog::haar(), u, 1), PreconditionFailed);
    EXPECT_THROW(tensor_decompose(Grid<double>({8, 6}), s, u, 2), InvalidArgument);
    auto p = tensor_decompose(Grid<double>({8, 8}), s, u, 1);
    EXPECT_THROW(tensor_reconstruct(p, catalog::dd_dual(1), catalog::deslauriers_dubuc(1)), InvalidArgument);
    EXPECT_THROW(coset_reconstruct(p, u), InvalidArgument);
}

TEST(OpCount, EmptyCounterThrows) {
    OpCounter c;
    EXPECT_THROW(measured_complexity(c), PreconditionFailed);
}

TEST(OpCount, CosetPerLevelTally) {
    // One level on N samples: N / 2^n coarse entries at (2^n-1)(alpha-1)+1+n
    // each, and (2^n-1) N / 2^n detail entries at (odd taps of H) + 1 each.
    auto [s, u] = dd(2);
    const std::uint64_t alpha = s.support_size(); // 11 nonzero taps
    for (std::size_t n : {2, 3}) {
        const std::uint64_t p = 1ULL << n;
        Grid<double> y(cube(n, 8));
        OpCounter c;
        auto pyr = coset_decompose(y, s, u, 1, &c);
        const std::uint64_t m = y.size() / p;
        // odd taps of U_4 are +-9/16 and -1/16 at +-1, +-3
        const std::uint64_t odd = 4 + 1;
        EXPECT_EQ(c.multiplicative_ops, m * ((p - 1) * (alpha - 1) + 1 + n) + m * (p - 1) * odd);
        EXPECT_EQ(c.samples_processed, y.size());
        const auto before = c.multiplicative_ops;
        coset_reconstruct(pyr, u, &c);
        EXPECT_EQ(c.multiplicative_ops - before, m * (p - 1) * odd);
    }
}

TEST(OpCount, CosetBoundAndDimensionIndependence) {
    auto [s, u] = dd(2);
    const double alpha = static_cast<double>(s.support_size());
    const double beta = static_cast<double>(u.support_size());
    double prev = 1e9;
    // n = 1 is dominated by the coarsest levels at this size
    for (std::size_t n : {2, 3, 4}) {
        Grid<double> y(cube(n, 16));
        OpCounter c;
        coset_reconstruct(coset_decompose(y, s, u, 4, &c), u, &c);
        const double v = measured_complexity(c).value();
        EXPECT_LE(v, alpha + 2 * beta + 1) << "n=" << n;
        EXPECT_LE(v, prev + 1e-12) << "n=" << n;
        prev = v;
    }
}

TEST(OpCount, TensorGrowsLinearlyInDimension) {
    auto [s, u] = dd(2);
    std::vector<double> per;
    for (std::size_t n : {1, 2, 3}) {
        Grid<double> y(cube(n, 16));
        OpCounter c;
        tensor_reconstruct(tensor_decompose(y, s, u, 1, &c), s, u, &c);
        per.push_back(measured_complexity(c).value());
    }
    EXPECT_NEAR(per[1], 2 * per[0], 1e-9);
    EXPECT_NEAR(per[2], 3 * per[0], 1e-9);
}

TEST(OpCount, LinearScaling) {
    auto [s, u] = dd(2);
    for (std::size_t n : {2, 3}) {
        OpCounter small, big;
        coset_decompose(Grid<double>(cube(n, 8)), s, u, 2, &small);
        coset_decompose(Grid<double>(cube(n, 16)), s, u, 2, &big);
        const double ratio = static_cast<double>(big.multiplicative_ops) / small.multiplicative_ops;
        EXPECT_NEAR(ratio, static_cast<double>(1u << n), 0.1 * (1u << n));
    }
}

TEST(SystemId, DistinguishesFilters) {
    auto a = transform_system_id(TransformMethod::coset, catalog::dd_dual(2), catalog::deslauriers_dubuc(2));
    auto b = transform_system_id(TransformMethod::coset, catalog::dd_dual(1), catalog::deslauriers_dubuc(1));
    auto c = transform_system_id(TransformMethod::coset, to_float(catalog::dd_dual(2)),
                                 to_float(catalog::deslauriers_dubuc(2)));
    EXPECT_NE(a, b);
    EXPECT_EQ(a, c);
    EXPECT_TRUE(a.starts_with("coset:G="));
}

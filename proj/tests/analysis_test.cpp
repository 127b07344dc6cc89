#include <gtest/gtest.h>

#include "cosetsum/analysis.hpp"
#include "cosetsum/catalog.hpp"
#include "cosetsum/constructors.hpp"
#include "cosetsum/wavelet_system.hpp"

using namespace cosetsum;

TEST(Interpolatory, Examples) {
    EXPECT_TRUE(is_interpolatory(catalog::deslauriers_dubuc(2)).pass);
    EXPECT_TRUE(is_interpolatory(coset_sum(catalog::deslauriers_dubuc(2), 3)).pass);
    auto r = is_interpolatory(catalog::dd_dual(2));
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.witness_index.has_value());
    const auto w = (*r.witness_index)[0];
    EXPECT_TRUE(w == 2 || w == -2 || w == 6 || w == -6) << w;
    EXPECT_FALSE(r.residual.is_zero());
}

TEST(Interpolatory, ExactPassHasZeroResidual) {
    auto r = is_interpolatory(coset_sum(catalog::deslauriers_dubuc(3), 2));
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.residual.is_exact());
    EXPECT_TRUE(r.residual.is_zero());
}

TEST(Interpolatory, CosetSumPreservesBothWays) {
    const std::vector<Mask> masks{catalog::haar(), catalog::linear_spline(), catalog::deslauriers_dubuc(1),
                                  catalog::deslauriers_dubuc(2), catalog::dd_dual(2)};
    for (const auto& r : masks)
        for (std::size_t n : {2, 3})
            EXPECT_EQ(is_interpolatory(coset_sum(r, n)).pass, is_interpolatory(r).pass);
}

TEST(Biorthogonal, Examples) {
    const Mask u = catalog::deslauriers_dubuc(2);
    const Mask s = catalog::dd_dual(2);
    EXPECT_TRUE(is_biorthogonal(u, s).pass);
    EXPECT_TRUE(is_biorthogonal(coset_sum(u, 2), coset_sum(s, 2)).pass);
    auto d = to_float(coset_sum(catalog::haar(), 2));
    (void)d;
    const Mask daub = catalog::daubechies2();
    auto bad = is_biorthogonal(coset_sum(daub, 2), coset_sum(daub, 2));
    EXPECT_FALSE(bad.pass);
    EXPECT_GT(bad.residual.to_double(), 1e-3);
    EXPECT_THROW(is_biorthogonal(u, coset_sum(u, 2)), DimensionMismatch);
}

TEST(Biorthogonal, CosetSumsOfDualPairs) {
    for (unsigned k = 1; k <= 3; ++k)
        for (std::size_t n : {2, 3})
            EXPECT_TRUE(is_biorthogonal(coset_sum(catalog::dd_dual(k), n), coset_sum(catalog::deslauriers_dubuc(k), n))
                            .pass)
                << "k=" << k << " n=" << n;
}

TEST(Accuracy, Examples) {
    EXPECT_EQ(accuracy_number(catalog::deslauriers_dubuc(2)).accuracy, 4u);
    EXPECT_EQ(accuracy_number(coset_sum(catalog::deslauriers_dubuc(2), 2)).accuracy, 4u);
    auto h = accuracy_number(catalog::haar());
    EXPECT_EQ(h.accuracy, 1u);
    ASSERT_TRUE(h.witness_order.has_value());
    EXPECT_EQ(*h.witness_order, std::vector<unsigned>{1});
}

TEST(Accuracy, CosetSumOfDualIsFour) {
    // The paper gives only a lower bound 2k; this value is the computed one.
    EXPECT_EQ(accuracy_number(coset_sum(catalog::dd_dual(2), 2)).accuracy, 4u);
}

TEST(Accuracy, CosetSumKeepsAccuracy) {
    for (unsigned k = 1; k <= 2; ++k)
        for (std::size_t n : {2, 3})
            EXPECT_EQ(accuracy_number(coset_sum(catalog::deslauriers_dubuc(k), n)).accuracy, 2 * k);
}

TEST(Accuracy, LowerBoundForNonInterpolatoryInput) {
    for (unsigned k = 1; k <= 2; ++k) {
        const Mask s = catalog::dd_dual(k);
        const unsigned m1 = *accuracy_number(s).accuracy;
        const unsigned m2 = *vanishing_moments(constant(1, 1) - s);
        for (std::size_t n : {2, 3})
            EXPECT_GE(*accuracy_number(coset_sum(s, n)).accuracy, std::min(m1, m2));
    }
}

TEST(Accuracy, CapIsReported) {
    auto r = accuracy_number(zero_mask(2), 5);
    EXPECT_TRUE(r.cap_reached());
    EXPECT_FALSE(vanishing_moments(zero_mask(1), 5).has_value());
}

TEST(VanishingMoments, Examples) {
    const auto sys = build_coset_system(catalog::dd_dual(2), catalog::deslauriers_dubuc(2), 2);
    // directions are (0,1), (1,0), (1,1)
    EXPECT_EQ(sys.directions[1], (Index{1, 0}));
    EXPECT_EQ(vanishing_moments(sys.wavelets[1]), 4u);
    EXPECT_EQ(vanishing_moments(catalog::dd_dual(2)), 0u);
    const auto sys1 = build_coset_system(catalog::dd_dual(1), catalog::deslauriers_dubuc(1), 2);
    EXPECT_EQ(vanishing_moments(sys1.wavelets[2]), 2u);
}

TEST(Muep, CosetAndTensorSystemsPass) {
    const auto coset = build_coset_system(catalog::dd_dual(2), catalog::deslauriers_dubuc(2), 2);
    auto r = muep_verify(coset.tau, coset.wavelets, coset.taud, coset.duals);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_TRUE(r.residual.is_zero());
    const auto haar = build_tensor_system(catalog::haar(), catalog::haar(), 2);
    EXPECT_TRUE(haar.verify().pass);
}

TEST(Muep, PerturbationIsDetected) {
    auto sys = build_coset_system(catalog::dd_dual(2), catalog::deslauriers_dubuc(2), 2);
    Filter f = sys.wavelets[0].filter();
    f.accumulate(f.begin()->first, dyadic(1, 10));
    sys.wavelets[0] = Mask(f);
    auto r = sys.verify();
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.witness_point.has_value());
    EXPECT_FALSE(r.detail.empty());
}

TEST(Muep, ShapeErrors) {
    const auto sys = build_coset_system(catalog::dd_dual(1), catalog::deslauriers_dubuc(1), 2);
    EXPECT_THROW(muep_verify(sys.tau, sys.wavelets, sys.taud, {}), InvalidArgument);
    EXPECT_THROW(muep_verify(sys.tau, sys.wavelets, catalog::haar(), sys.duals), DimensionMismatch);
}

TEST(FloatMode, AgreesWithExact) {
    const std::vector<Mask> masks{catalog::haar(), catalog::linear_spline(), catalog::deslauriers_dubuc(3),
                                  catalog::dd_dual(3), coset_sum(catalog::dd_dual(2), 3)};
    for (const auto& m : masks) {
        const Mask f = to_float(m);
        for (const auto& g : parity_points(m.dim())) {
            double e = evaluate_at_parity_point(m, g).to_double();
            double a = evaluate_at_parity_point(f, g).to_double();
            EXPECT_LE(std::fabs(e - a), 1e-12 * std::max(1.0, std::fabs(e)));
        }
        const Mask sq = m * m;
        const Mask fsq = f * f;
        for (const auto& [k, v] : sq.filter())
            EXPECT_LE(std::fabs(v.to_double() - fsq.filter().at(k).to_double()),
                      1e-12 * std::max(1.0, std::fabs(v.to_double())));
    }
    EXPECT_EQ(accuracy_number(to_float(catalog::deslauriers_dubuc(2))).accuracy, 4u);
    EXPECT_TRUE(is_biorthogonal(to_float(catalog::dd_dual(2)), to_float(catalog::deslauriers_dubuc(2))).pass);
}

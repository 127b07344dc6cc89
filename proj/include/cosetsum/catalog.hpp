#pragma once

#include <cmath>
#include <string>

#include "cosetsum/mask.hpp"

namespace cosetsum::catalog {

/// Haar: filter {0 -> 1, 1 -> 1}.
inline Mask haar() { return Mask(Filter::from_taps(0, {1, 1})); }

/// Piecewise-linear spline: filter {-1 -> 1/2, 0 -> 1, 1 -> 1/2}.
inline Mask linear_spline() { return Mask(Filter::from_taps(-1, {dyadic(1, 1), 1, dyadic(1, 1)})); }

/// cos^2(w/2) = (2 + e^{iw} + e^{-iw}) / 4
inline Mask cos_squared_half() { return linear_spline(); }

/// sin^2(w/2) = (2 - e^{iw} - e^{-iw}) / 4
inline Mask sin_squared_half() { return Mask(Filter::from_taps(-1, {dyadic(-1, 1), 1, dyadic(-1, 1)})); }

/// Deslauriers-Dubuc interpolatory mask U_{2k}(w) = cos^{2k}(w/2) P_k(sin^2(w/2))
/// with P_k(x) = sum_{j<k} C(k-1+j, j) x^j, expanded as a Laurent polynomial.
inline Mask deslauriers_dubuc(unsigned k) {
    if (k == 0)
        throw InvalidArgument("Deslauriers-Dubuc order parameter k must be >= 1");
    const Mask s = sin_squared_half();
    // Horner: P_k(s) = c_0 + s (c_1 + s (c_2 + ...)).
    Mask p = zero_mask(1);
    for (unsigned j = k; j-- > 0;) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), k - 1 + j, j);
        p = p * s + constant(Dyadic(c), 1);
    }
    Mask u = p;
    const Mask c2 = cos_squared_half();
    for (unsigned i = 0; i < k; ++i)
        u = u * c2;
    return u;
}

/// The dual S_{2k} = U_{2k} (3 - 2 U_{2k}), biorthogonal to U_{2k}.
inline Mask dd_dual(unsigned k) {
    const Mask u = deslauriers_dubuc(k);
    return u * (constant(3, 1) - Scalar(2) * u);
}

/// Daubechies order-2 mask cos^2(w/2) ((1+sqrt3)/2 + (1-sqrt3)/2 e^{-iw}),
/// floating point. Filter taps sit at indices -1..2.
inline Mask daubechies2() {
    const double r3 = std::sqrt(3.0);
    Filter f(1, ScalarKind::approx);
    // Filter of the factor (1+sqrt3)/2 + (1-sqrt3)/2 e^{-iw} in mask normalisation.
    f.set({0}, Scalar::approx(1.0 + r3));
    f.set({1}, Scalar::approx(1.0 - r3));
    return to_float(cos_squared_half()) * Mask(std::move(f));
}

} // namespace cosetsum::catalog

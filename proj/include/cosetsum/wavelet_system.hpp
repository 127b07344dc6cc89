#pragma once

#include <string>
#include <vector>

#include "cosetsum/analysis.hpp"
#include "cosetsum/constructors.hpp"
#include "cosetsum/errors.hpp"
#include "cosetsum/mask.hpp"

namespace cosetsum {

enum class SystemKind { univariate, tensor, coset };

inline const char* to_string(SystemKind k) {
    switch (k) {
    case SystemKind::univariate: return "univariate";
    case SystemKind::tensor: return "tensor";
    case SystemKind::coset: return "coset";
    }
    return "?";
}

// Combined biorthogonal masks (tau, (t_nu)) and (taud, (td_nu)), nu in Gamma'
// in lexicographic order.
struct WaveletSystem {
    std::size_t dim = 1;
    SystemKind kind = SystemKind::univariate;
    Mask tau;
    Mask taud;
    std::vector<Index> directions;
    std::vector<Mask> wavelets;
    std::vector<Mask> duals;

    CheckResult verify() const { return muep_verify(tau, wavelets, taud, duals); }
};

namespace detail {
inline void require_biorthogonal(const Mask& s, const Mask& u, const char* what) {
    if (s.dim() != 1 || u.dim() != 1)
        throw DimensionMismatch(std::string(what) + ": expected univariate masks");
    if (!is_refinement_mask(s) || !is_refinement_mask(u))
        throw PreconditionFailed(std::string(what) + ": inputs must be refinement masks");
    auto r = is_biorthogonal(s, u);
    if (!r.pass)
        throw PreconditionFailed(std::string(what) + ": masks are not biorthogonal (" + r.detail + ")");
}

inline std::vector<Index> standard_directions(std::size_t dim) {
    std::vector<Index> out;
    for (const auto& p : nonzero_parity_points(dim))
        out.push_back(p.as_index());
    return out;
}
} // namespace detail

/// e^{-iw} conj(M(w + pi)) for a univariate mask M.
inline Mask univariate_wavelet_from(const Mask& m) {
    return shift(conjugate(modulate(m, ParityPoint({1}))), Index{1});
}

/// S1 = e^{-iw} conj(U0(w+pi)), U1 = e^{-iw} conj(S0(w+pi)).
inline WaveletSystem build_1d_system(const Mask& s0, const Mask& u0) {
    detail::require_biorthogonal(s0, u0, "build_1d_system");
    WaveletSystem sys;
    sys.dim = 1;
    sys.kind = SystemKind::univariate;
    sys.tau = s0;
    sys.taud = u0;
    sys.directions = {Index{1}};
    sys.wavelets = {univariate_wavelet_from(u0)};
    sys.duals = {univariate_wavelet_from(s0)};
    return sys;
}

/// t_nu = T_n[S_{nu_1}, ..., S_{nu_n}], td_nu = T_n[U_{nu_1}, ..., U_{nu_n}].
inline WaveletSystem build_tensor_system(const Mask& s0, const Mask& u0, std::size_t dim) {
    detail::require_biorthogonal(s0, u0, "build_tensor_system");
    if (dim == 0)
        throw InvalidArgument("build_tensor_system: dimension must be >= 1");
    const Mask s1 = univariate_wavelet_from(u0);
    const Mask u1 = univariate_wavelet_from(s0);
    WaveletSystem sys;
    sys.dim = dim;
    sys.kind = SystemKind::tensor;
    sys.tau = tensor_product(s0, dim);
    sys.taud = tensor_product(u0, dim);
    sys.directions = detail::standard_directions(dim);
    // The wavelet factors are not refinement masks, so the product is formed
    // directly from the filters rather than through tensor_product().
    auto product = [&](const Index& nu, const Mask& lo, const Mask& hi) {
        std::optional<Mask> acc;
        for (std::size_t i = 0; i < dim; ++i) {
            Mask placed = embed(nu[i] ? hi : lo, dim, i);
            acc = acc ? *acc * placed : placed;
        }
        return *acc;
    };
    for (const auto& nu : sys.directions) {
        sys.wavelets.push_back(product(nu, s0, s1));
        sys.duals.push_back(product(nu, u0, u1));
    }
    return sys;
}

/// Auxiliary masks of the dual construction for a coset system.
struct DualScaffold {
    std::vector<Index> directions;
    Mask t0;                          // (1 - tau) / 2
    std::vector<Mask> f;              // f_nu, nu in Gamma'
    std::vector<Mask> g;              // g_nu, nu in Gamma'
    std::vector<Mask> tau_nu;         // tau_nu, nu in Gamma (origin first)
    std::vector<Mask> tau_nu_dual;    // taud_nu, nu in Gamma (origin first)
};

namespace detail {
/// e^{-i nu.w} sum_{gamma} e^{-i nu.gamma} conj(m(w + gamma))
inline Mask alternating_periodisation(const Mask& m, const Index& nu) {
    const std::size_t n = m.dim();
    Mask acc = zero_mask(n, m.kind());
    for (const auto& gamma : parity_points(n)) {
        Mask term = conjugate(modulate(m, gamma));
        acc = acc + (gamma.sign_at(nu) < 0 ? -term : term);
    }
    return shift(acc, nu);
}

inline void require_dual_preconditions(const Mask& tau, const Mask& taud) {
    if (tau.dim() != taud.dim())
        throw DimensionMismatch("dual wavelet masks: refinement masks of different dimension");
    if (!is_refinement_mask(tau) || !is_refinement_mask(taud))
        throw PreconditionFailed("dual wavelet masks: tau and taud must be refinement masks");
    if (!is_interpolatory(taud).pass)
        throw PreconditionFailed("dual wavelet masks: taud must be interpolatory");
    if (!is_biorthogonal(tau, taud).pass)
        throw PreconditionFailed("dual wavelet masks: tau and taud must be biorthogonal");
}
} // namespace detail

/// Builds t0, f_nu, g_nu, tau_nu = t_nu + f_nu t0 and taud_nu for the given
/// refinement pair and primal wavelets t_nu (standard Gamma').
inline DualScaffold dual_scaffold(const Mask& tau, const Mask& taud, const std::vector<Mask>& wavelets) {
    detail::require_dual_preconditions(tau, taud);
    const std::size_t n = tau.dim();
    const ScalarKind kind = tau.kind();
    DualScaffold sc;
    sc.directions = detail::standard_directions(n);
    if (wavelets.size() != sc.directions.size())
        throw InvalidArgument("dual wavelet masks: expected 2^n - 1 wavelet masks");
    const Scalar half = Scalar::pow2(-1, kind);
    const Scalar norm = Scalar::pow2(1 - static_cast<long>(n), kind);
    sc.t0 = half * (constant(Scalar::one(kind), n) - tau);
    sc.tau_nu.push_back(sc.t0);
    sc.tau_nu_dual.push_back(constant(norm, n));
    for (std::size_t i = 0; i < sc.directions.size(); ++i) {
        const Index& nu = sc.directions[i];
        sc.f.push_back(detail::alternating_periodisation(taud, nu));
        sc.g.push_back(detail::alternating_periodisation(tau, nu));
        sc.tau_nu.push_back(wavelets[i] + sc.f.back() * sc.t0);
        sc.tau_nu_dual.push_back(shift(constant(norm, n), nu));
    }
    return sc;
}

/// td_nu = -2^{1-n} g_nu taud + taud_nu.
inline std::vector<Mask> compute_dual_wavelet_masks(const Mask& tau, const Mask& taud,
                                                    const std::vector<Mask>& wavelets) {
    DualScaffold sc = dual_scaffold(tau, taud, wavelets);
    const std::size_t n = tau.dim();
    const Scalar norm = Scalar::pow2(1 - static_cast<long>(n), tau.kind());
    std::vector<Mask> duals;
    duals.reserve(sc.g.size());
    for (std::size_t i = 0; i < sc.g.size(); ++i)
        duals.push_back(sc.tau_nu_dual[i + 1] - norm * (sc.g[i] * taud));
    return duals;
}

/// t_nu(w) = e^{-i w.nu} conj(U(w.nu + pi)).
inline Mask coset_wavelet_mask(const Mask& u, const Index& nu) {
    const std::size_t n = nu.size();
    Mask lifted = lift_along_direction(modulate(u, ParityPoint({1})), nu, n);
    return shift(conjugate(lifted), nu);
}

/// tau = C_n[S], taud = C_n[U], t_nu per the directional formula, duals in
/// closed form.
inline WaveletSystem build_coset_system(const Mask& s, const Mask& u, std::size_t dim) {
    if (dim == 0)
        throw InvalidArgument("build_coset_system: dimension must be >= 1");
    if (u.dim() != 1 || !is_interpolatory(u).pass)
        throw PreconditionFailed("build_coset_system: U must be a univariate interpolatory mask");
    detail::require_biorthogonal(s, u, "build_coset_system");
    WaveletSystem sys;
    sys.dim = dim;
    sys.kind = SystemKind::coset;
    sys.tau = coset_sum(s, dim);
    sys.taud = coset_sum(u, dim);
    sys.directions = detail::standard_directions(dim);
    for (const auto& nu : sys.directions)
        sys.wavelets.push_back(coset_wavelet_mask(u, nu));
    sys.duals = compute_dual_wavelet_masks(sys.tau, sys.taud, sys.wavelets);
    return sys;
}

} // namespace cosetsum

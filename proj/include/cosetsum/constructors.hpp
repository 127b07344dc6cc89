#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cosetsum/errors.hpp"
#include "cosetsum/mask.hpp"

namespace cosetsum {

// A complete set of representatives of Z^n / 2Z^n with the origin first.
class CosetReps {
public:
    /// {0,1}^n with the nonzero representatives in lexicographic order.
    static CosetReps standard(std::size_t dim) {
        std::vector<Index> reps;
        for (const auto& p : parity_points(dim))
            reps.push_back(p.as_index());
        return CosetReps(dim, std::move(reps));
    }

    CosetReps(std::size_t dim, std::vector<Index> reps) : dim_(dim), reps_(std::move(reps)) {
        if (dim == 0)
            throw InvalidArgument("coset representatives need dimension >= 1");
        const std::size_t expected = std::size_t{1} << dim;
        if (reps_.size() != expected)
            throw InvalidArgument("expected " + std::to_string(expected) + " coset representatives, got " +
                                  std::to_string(reps_.size()));
        for (const auto& r : reps_)
            if (r.size() != dim)
                throw InvalidArgument("coset representative has the wrong length");
        if (!is_zero_index(reps_.front()))
            throw InvalidArgument("the first coset representative must be the origin");
        std::set<std::vector<int>> classes;
        for (const auto& r : reps_) {
            std::vector<int> cls(dim);
            for (std::size_t i = 0; i < dim; ++i)
                cls[i] = static_cast<int>(r[i] & 1);
            if (!classes.insert(cls).second)
                throw InvalidArgument("coset representatives " + index_key(r) +
                                      " is congruent to an earlier one modulo 2");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Index>& reps() const noexcept { return reps_; }
    /// Gamma' = Gamma \ 0.
    std::vector<Index> nonzero() const { return {reps_.begin() + 1, reps_.end()}; }
    bool is_standard() const {
        for (const auto& r : reps_)
            for (auto v : r)
                if (v != 0 && v != 1)
                    return false;
        return true;
    }

private:
    std::size_t dim_;
    std::vector<Index> reps_;
};

/// A univariate refinement mask per direction nu in Gamma', in Gamma' order.
struct DirectionMaskAssignment {
    std::vector<Index> directions;
    std::vector<Mask> masks;
};

struct CosetSumResult {
    Mask mask;
    /// True when two directional placements wrote to the same index (only
    /// possible for non-standard representatives with wide filters).
    bool collisions = false;
};

namespace detail {
inline void require_refinement(const Mask& r, const char* what) {
    if (r.dim() != 1)
        throw DimensionMismatch(std::string(what) + ": expected a univariate mask");
    if (!is_refinement_mask(r))
        throw PreconditionFailed(std::string(what) + ": input is not a refinement mask (R(0) != 1)");
}
} // namespace detail

/// C_n[(R_nu)](w) = 2^{1-n} (1 - 2^{n-1} + sum_{nu in Gamma'} R_nu(w.nu)).
inline CosetSumResult coset_sum_with_diagnostics(const DirectionMaskAssignment& assign, const CosetReps& gamma) {
    const std::size_t n = gamma.dim();
    const auto dirs = gamma.nonzero();
    if (assign.masks.size() != dirs.size() || assign.directions.size() != dirs.size())
        throw InvalidArgument("direction assignment must give one mask per nonzero representative");
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (assign.directions[i] != dirs[i])
            throw InvalidArgument("direction assignment order does not match the representatives");
        detail::require_refinement(assign.masks[i], "coset_sum");
    }
    const ScalarKind kind = assign.masks.front().kind();
    for (const auto& m : assign.masks)
        if (m.kind() != kind)
            throw ScalarKindMismatch("coset_sum: mixed exact and floating-point direction masks");

    Mask acc = constant(Scalar::integer(1, kind) - Scalar::pow2(static_cast<long>(n) - 1, kind), n);
    std::set<Index> touched;
    bool collisions = false;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        Mask lifted = lift_along_direction(assign.masks[i], dirs[i], n);
        for (const auto& [k, v] : lifted.filter()) {
            if (!is_zero_index(k) && !touched.insert(k).second)
                collisions = true;
        }
        acc = acc + lifted;
    }
    return {Scalar::pow2(1 - static_cast<long>(n), kind) * acc, collisions};
}

inline Mask coset_sum_general(const DirectionMaskAssignment& assign, const CosetReps& gamma) {
    return coset_sum_with_diagnostics(assign, gamma).mask;
}

inline CosetSumResult coset_sum_with_diagnostics(const Mask& r, const CosetReps& gamma) {
    DirectionMaskAssignment assign{gamma.nonzero(), {}};
    assign.masks.assign(assign.directions.size(), r);
    return coset_sum_with_diagnostics(assign, gamma);
}

inline Mask coset_sum(const Mask& r, const CosetReps& gamma) { return coset_sum_with_diagnostics(r, gamma).mask; }

inline Mask coset_sum(const Mask& r, std::size_t dim) { return coset_sum(r, CosetReps::standard(dim)); }

/// The form 2^{1-n} (1/2 + sum_{nu in Gamma'} (R(w.nu) - 1/2)), valid for
/// interpolatory R with the standard representatives.
inline Mask coset_sum_interpolatory_form(const Mask& r, std::size_t dim) {
    detail::require_refinement(r, "coset_sum_interpolatory_form");
    const ScalarKind kind = r.kind();
    const Scalar half = Scalar::pow2(-1, kind);
    Mask acc = constant(half, dim);
    for (const auto& p : nonzero_parity_points(dim))
        acc = acc + (lift_along_direction(r, p.as_index(), dim) - constant(half, dim));
    return Scalar::pow2(1 - static_cast<long>(dim), kind) * acc;
}

/// T_n[R_1, ..., R_n](w) = R_1(w_1) ... R_n(w_n); filter h(k) = prod H_j(k_j).
inline Mask tensor_product(const std::vector<Mask>& factors) {
    if (factors.empty())
        throw InvalidArgument("tensor_product needs at least one factor");
    const ScalarKind kind = factors.front().kind();
    for (const auto& f : factors) {
        detail::require_refinement(f, "tensor_product");
        if (f.kind() != kind)
            throw ScalarKindMismatch("tensor_product: mixed exact and floating-point factors");
    }
    const std::size_t n = factors.size();
    std::vector<std::pair<Index, Scalar>> partial{{Index{}, Scalar::one(kind)}};
    for (const auto& fac : factors) {
        std::vector<std::pair<Index, Scalar>> next;
        next.reserve(partial.size() * fac.support_size());
        for (const auto& [k, v] : partial) {
            for (const auto& [kk, vv] : fac.filter()) {
                Index t = k;
                t.push_back(kk[0]);
                next.emplace_back(std::move(t), v * vv);
            }
        }
        partial = std::move(next);
    }
    Filter f(n, kind);
    for (const auto& [k, v] : partial)
        f.set(k, v);
    return Mask(std::move(f));
}

inline Mask tensor_product(const Mask& r, std::size_t dim) { return tensor_product(std::vector<Mask>(dim, r)); }

enum class LiftOperator { coset_sum, tensor_product };

struct HybridBlock {
    LiftOperator op = LiftOperator::coset_sum;
    Mask mask;
    std::size_t dim = 1;
};

/// Product over blocks of the block operator applied to consecutive disjoint
/// coordinate groups.
inline Mask hybrid(const std::vector<HybridBlock>& blocks) {
    if (blocks.empty())
        throw InvalidArgument("hybrid needs at least one block");
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (b.dim == 0)
            throw DimensionMismatch("hybrid block dimension must be at least 1");
        n += b.dim;
    }
    std::optional<Mask> acc;
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        Mask block = b.op == LiftOperator::coset_sum ? coset_sum(b.mask, b.dim) : tensor_product(b.mask, b.dim);
        Mask placed = embed(block, n, offset);
        acc = acc ? *acc * placed : placed;
        offset += b.dim;
    }
    return *acc;
}

} // namespace cosetsum

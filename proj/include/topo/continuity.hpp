#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topo/errors.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"
#include "topo/theta.hpp"

namespace topo {

/// What the level-0 verdict means: by convention plain continuity, or the
/// literal hull-quantified reading (which at level 0 quantifies over all
/// neighbourhoods of the image and so matches classical weak continuity).
enum class Alpha0Rule { continuity, literal_hulls };

/// Failure evidence: the source point, the target-side set whose closure the
/// image had to enter, and the image of the smallest neighbourhood tried.
struct ContinuityWitness {
    int point = -1;
    PointSet hull_top;
    PointSet image;
};

struct Verdict {
    bool holds = true;
    std::optional<ContinuityWitness> witness;
    explicit operator bool() const noexcept { return holds; }
};

namespace detail {

/// Pointwise continuity over raw assignments: the image of every minimal
/// neighbourhood must land inside the minimal neighbourhood of the image.
/// Equivalent to "preimages of opens are open" on finite spaces.
inline Verdict continuity_verdict(const FinSpace& x_sp, const FinSpace& y_sp,
                                  const std::vector<int>& assignment) {
    for (int x = 0; x < x_sp.size(); ++x) {
        int fx = assignment[static_cast<std::size_t>(x)];
        const PointSet& target_min = y_sp.min_nbhd(fx);
        PointSet img = PointSet::empty(y_sp.size());
        x_sp.min_nbhd(x).for_each(
            [&](int z) { img.add(assignment[static_cast<std::size_t>(z)]); });
        if (!img.subset_of(target_min))
            return {false, ContinuityWitness{x, target_min, img}};
    }
    return {};
}

/// Hull-quantified verdict at level alpha ≥ 1 (or the literal level-0
/// reading): for every point, the image of some neighbourhood must land in
/// the closure of every minimal hull top of the image point. Testing the
/// minimal neighbourhood alone is decisive, since its image is contained in
/// the image of any other neighbourhood of the point.
inline Verdict hull_verdict(const FinSpace& x_sp, ThetaCache& y_cache,
                            const std::vector<int>& assignment, int alpha) {
    for (int x = 0; x < x_sp.size(); ++x) {
        int fx = assignment[static_cast<std::size_t>(x)];
        PointSet img = PointSet::empty(y_cache.space().size());
        x_sp.min_nbhd(x).for_each(
            [&](int z) { img.add(assignment[static_cast<std::size_t>(z)]); });
        const auto& st = y_cache.singleton_tops(fx, alpha);
        for (std::size_t i = 0; i < st.closures.size(); ++i) {
            if (!img.subset_of(st.closures[i]))
                return {false, ContinuityWitness{x, st.tops[i], img}};
        }
    }
    return {};
}

inline Verdict theta_verdict(const FinSpace& x_sp, ThetaCache& y_cache,
                             const std::vector<int>& assignment, int alpha,
                             Alpha0Rule rule) {
    check_alpha(alpha);
    if (alpha == 0 && rule == Alpha0Rule::continuity)
        return continuity_verdict(x_sp, y_cache.space(), assignment);
    return hull_verdict(x_sp, y_cache, assignment, alpha);
}

inline Verdict classical_verdict(const FinSpace& x_sp, const FinSpace& y_sp,
                                 const std::vector<int>& assignment) {
    for (int x = 0; x < x_sp.size(); ++x) {
        int fx = assignment[static_cast<std::size_t>(x)];
        PointSet img = PointSet::empty(y_sp.size());
        x_sp.min_nbhd(x).for_each(
            [&](int z) { img.add(assignment[static_cast<std::size_t>(z)]); });
        for (const PointSet& v : y_sp.opens()) {
            if (!v.contains(fx)) continue;
            if (!img.subset_of(y_sp.closure(v)))
                return {false, ContinuityWitness{x, v, img}};
        }
    }
    return {};
}

// Caller guarantees the source has at most 16 points.
inline bool closure_criterion_core(const FinSpace& x_sp, ThetaCache& y_cache,
                                   const std::vector<int>& assignment, int alpha) {
    const std::uint32_t limit = std::uint32_t{1} << x_sp.size();
    for (std::uint32_t bits = 0; bits < limit; ++bits) {
        PointSet a = PointSet::from_bits(x_sp.size(), bits);
        PointSet img_cl = PointSet::empty(y_cache.space().size());
        x_sp.closure(a).for_each(
            [&](int z) { img_cl.add(assignment[static_cast<std::size_t>(z)]); });
        PointSet img = PointSet::empty(y_cache.space().size());
        a.for_each([&](int z) { img.add(assignment[static_cast<std::size_t>(z)]); });
        if (!img_cl.subset_of(y_cache.theta_closure(img, alpha))) return false;
    }
    return true;
}

}  // namespace detail

/// Preimage of every target open is open in the source.
inline bool is_continuous(const TotalMap& f) {
    for (const PointSet& u : f.target().opens())
        if (!f.source().is_open(f.preimage(u))) return false;
    return true;
}

/// Hull-quantified continuity at the given level, with a witness on failure.
/// Level 0 follows the continuity convention unless literal_hulls is asked.
inline Verdict check_theta_continuous(const TotalMap& f, int alpha,
                                      Alpha0Rule rule = Alpha0Rule::continuity) {
    ThetaCache cache(f.target());
    return detail::theta_verdict(f.source(), cache, f.assignment(), alpha, rule);
}

inline bool is_theta_continuous(const TotalMap& f, int alpha,
                                Alpha0Rule rule = Alpha0Rule::continuity) {
    return check_theta_continuous(f, alpha, rule).holds;
}

/// For every point and every open V around its image, some neighbourhood's
/// image lands inside closure(V).
inline Verdict check_classical_weakly_continuous(const TotalMap& f) {
    return detail::classical_verdict(f.source(), f.target(), f.assignment());
}

inline bool is_classical_weakly_continuous(const TotalMap& f) {
    return check_classical_weakly_continuous(f).holds;
}

/// The closure-image criterion: the image of closure(A) must lie in the
/// level-alpha θ-closure of the image of A, for every subset A of the
/// source. All subsets are iterated (singletons alone are not decisive), so
/// the source is guarded at 16 points.
inline bool closure_criterion(const TotalMap& f, int alpha) {
    detail::check_alpha(alpha);
    if (f.source().size() > 16)
        fail(ErrorCode::size_guard_exceeded,
             "closure criterion iterates all subsets; source has " +
                 std::to_string(f.source().size()) + " points (guard: 16)");
    ThetaCache cache(f.target());
    return detail::closure_criterion_core(f.source(), cache, f.assignment(), alpha);
}

}  // namespace topo

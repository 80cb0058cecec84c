#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topo/continuity.hpp"
#include "topo/errors.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"
#include "topo/theta.hpp"

namespace topo {

/// A dense-extension problem: a source space X, a dense subset S, a target
/// space Y, and a map f defined on S that is continuous for the subspace
/// topology on S. Both requirements are checked at construction.
class ExtensionInstance {
public:
    ExtensionInstance(SpaceRef x, SpaceRef y, PointSet s, PartialMap f)
        : x_(std::move(x)), y_(std::move(y)), s_(s), f_(std::move(f)) {
        if (!x_ || !y_) fail(ErrorCode::invariant_violation, "instance requires both spaces");
        if (s_.universe() != x_->size())
            fail(ErrorCode::universe_mismatch, "S must be a subset of the source space");
        if (!(f_.source() == *x_) || !(f_.target() == *y_))
            fail(ErrorCode::invariant_violation, "map spaces do not match the instance spaces");
        if (!(f_.domain() == s_))
            fail(ErrorCode::invariant_violation,
                 "map domain " + f_.domain().to_string() + " differs from S " + s_.to_string());
        if (!x_->is_dense(s_))
            fail(ErrorCode::density_failed,
                 "S " + s_.to_string() + " is not dense: closure is " +
                     x_->closure(s_).to_string());
        Subspace sub = subspace_topology(*x_, s_);
        std::vector<int> induced(static_cast<std::size_t>(sub.space.size()));
        for (int i = 0; i < sub.space.size(); ++i)
            induced[static_cast<std::size_t>(i)] =
                f_.assignment()[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(i)])];
        if (!detail::continuity_verdict(sub.space, *y_, induced).holds)
            fail(ErrorCode::continuity_failed,
                 "the map is not continuous on S for the subspace topology");
    }

    const FinSpace& source() const noexcept { return *x_; }
    const FinSpace& target() const noexcept { return *y_; }
    const SpaceRef& source_ref() const noexcept { return x_; }
    const SpaceRef& target_ref() const noexcept { return y_; }
    const PointSet& dense_set() const noexcept { return s_; }
    const PartialMap& partial_map() const noexcept { return f_; }

    bool operator==(const ExtensionInstance& other) const {
        return *x_ == *other.x_ && *y_ == *other.y_ && s_ == other.s_ && f_ == other.f_;
    }

private:
    SpaceRef x_;
    SpaceRef y_;
    PointSet s_;
    PartialMap f_;
};

enum class ConditionMode { closure, theta };
enum class TieBreak { min, max };

/// K(x): all subsets of S whose closure contains x; on a finite space these
/// are exactly the subsets of S meeting min_nbhd(x). Guarded at |S| ≤ 20.
inline std::vector<PointSet> k_family(const ExtensionInstance& inst, int x) {
    const FinSpace& sp = inst.source();
    if (x < 0 || x >= sp.size())
        fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
    const std::vector<int> s_points = inst.dense_set().points();
    if (s_points.size() > 20)
        fail(ErrorCode::size_guard_exceeded,
             "K(x) enumerates all subsets of S; |S| = " + std::to_string(s_points.size()) +
                 " (guard: 20)");
    const PointSet& nbhd = sp.min_nbhd(x);
    std::vector<PointSet> out;
    const std::uint32_t limit = std::uint32_t{1} << s_points.size();
    for (std::uint32_t combo = 1; combo < limit; ++combo) {
        PointSet m = sp.empty_set();
        for (std::size_t i = 0; i < s_points.size(); ++i)
            if ((combo >> i) & 1u) m.add(s_points[i]);
        if (m.intersects(nbhd)) out.push_back(m);
    }
    std::sort(out.begin(), out.end(),
              [](const PointSet& a, const PointSet& b) { return canonical_less(a, b); });
    return out;
}

/// Intersection over M ∈ K(x) of closure(f(M)) (mode closure) or of the
/// level-1 θ-closure of f(M) (mode theta). Both closure operators are
/// monotone and every member of K(x) contains a singleton {s} with
/// s ∈ min_nbhd(x) ∩ S, so intersecting over those singleton images is
/// exact. S is dense, so min_nbhd(x) ∩ S is never empty.
inline PointSet condition_set(const ExtensionInstance& inst, int x, ConditionMode mode,
                              ThetaCache* y_cache = nullptr) {
    const FinSpace& sp = inst.source();
    const FinSpace& target = inst.target();
    if (x < 0 || x >= sp.size())
        fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
    std::optional<ThetaCache> local;
    if (mode == ConditionMode::theta && y_cache == nullptr) {
        local.emplace(target);
        y_cache = &*local;
    }
    PointSet out = target.full_set();
    (sp.min_nbhd(x) & inst.dense_set()).for_each([&](int s) {
        PointSet img = PointSet::singleton(target.size(), inst.partial_map()(s));
        out = out & (mode == ConditionMode::closure ? target.closure(img)
                                                    : y_cache->theta_closure(img, 1));
    });
    return out;
}

/// Per-point condition sets and the two existence flags. The closure-mode
/// set at a point is always contained in the theta-mode set.
struct ConditionReport {
    std::vector<PointSet> closure_sets;
    std::vector<PointSet> theta_sets;
    bool sufficient_holds = true;  // every closure-mode set nonempty
    bool necessary_holds = true;   // every theta-mode set nonempty
    std::optional<int> sufficient_failure;  // first failing point
    std::optional<int> necessary_failure;
};

inline ConditionReport check_conditions(const ExtensionInstance& inst,
                                        ThetaCache* y_cache = nullptr) {
    std::optional<ThetaCache> local;
    if (y_cache == nullptr) {
        local.emplace(inst.target());
        y_cache = &*local;
    }
    ConditionReport report;
    for (int x = 0; x < inst.source().size(); ++x) {
        report.closure_sets.push_back(condition_set(inst, x, ConditionMode::closure));
        report.theta_sets.push_back(condition_set(inst, x, ConditionMode::theta, y_cache));
        if (report.closure_sets.back().is_empty() && !report.sufficient_failure) {
            report.sufficient_holds = false;
            report.sufficient_failure = x;
        }
        if (report.theta_sets.back().is_empty() && !report.necessary_failure) {
            report.necessary_holds = false;
            report.necessary_failure = x;
        }
    }
    return report;
}

namespace detail {

inline int pick(const PointSet& candidates, TieBreak tie) {
    return tie == TieBreak::min ? candidates.min_point() : candidates.max_point();
}

inline TotalMap checked_extension(const ExtensionInstance& inst, std::vector<int> assignment) {
    TotalMap f(inst.source_ref(), inst.target_ref(), std::move(assignment));
    // Guaranteed by construction; a failure here is a bug, not bad input.
    if (!is_theta_continuous(f, 1))
        throw std::logic_error("constructed extension failed the level-1 continuity check");
    return f;
}

}  // namespace detail

/// The constructive extension: keep f on S and, off S, pick the tie-break
/// point of the nonempty closure-mode condition set. Requires the closure
/// condition to hold at every point; the result agrees with f on S and
/// passes the level-1 hull continuity check.
inline TotalMap construct_extension(const ExtensionInstance& inst, TieBreak tie = TieBreak::min) {
    std::vector<int> assignment(static_cast<std::size_t>(inst.source().size()));
    for (int x = 0; x < inst.source().size(); ++x) {
        if (inst.dense_set().contains(x)) {
            assignment[static_cast<std::size_t>(x)] = inst.partial_map()(x);
            continue;
        }
        PointSet e = condition_set(inst, x, ConditionMode::closure);
        if (e.is_empty())
            fail(ErrorCode::condition_failed,
                 "the closure condition set is empty at point " + std::to_string(x));
        assignment[static_cast<std::size_t>(x)] = detail::pick(e, tie);
    }
    return detail::checked_extension(inst, std::move(assignment));
}

/// The relaxed construction: pick from the closure-mode condition set at
/// every point, including points of S, so the result may differ from f on S
/// while still tracking it through the condition sets.
inline TotalMap approximate_map(const ExtensionInstance& inst, TieBreak tie = TieBreak::min) {
    std::vector<int> assignment(static_cast<std::size_t>(inst.source().size()));
    for (int x = 0; x < inst.source().size(); ++x) {
        PointSet e = condition_set(inst, x, ConditionMode::closure);
        if (e.is_empty())
            fail(ErrorCode::condition_failed,
                 "the closure condition set is empty at point " + std::to_string(x));
        assignment[static_cast<std::size_t>(x)] = detail::pick(e, tie);
    }
    return detail::checked_extension(inst, std::move(assignment));
}

/// C(M) = {z ∈ M : f(z) ∈ V}; M must lie in the domain of f.
inline PointSet restrict_preimage(const PointSet& m, const PartialMap& f, const PointSet& v) {
    if (m.universe() != f.source().size())
        fail(ErrorCode::universe_mismatch, "M must live over the source universe");
    if (v.universe() != f.target().size())
        fail(ErrorCode::universe_mismatch, "V must live over the target universe");
    if (!m.subset_of(f.domain()))
        fail(ErrorCode::invariant_violation,
             "M " + m.to_string() + " leaves the map domain " + f.domain().to_string());
    PointSet out = PointSet::empty(m.universe());
    m.for_each([&](int z) {
        if (v.contains(f(z))) out.add(z);
    });
    return out;
}

/// The neighbourhood produced in the constructive argument: the smallest
/// open Ox around x (opens are scanned in canonical order, so the minimal
/// neighbourhood is found first when it qualifies) with
/// Ox ⊆ closure(C(S)) and F(Ox) ⊆ closure(V), where C restricts S to the
/// points f sends into V. Failure would contradict the construction, so it
/// is reported as NoWitness.
inline PointSet witness_neighbourhood(const ExtensionInstance& inst, const TotalMap& f, int x,
                                      const PointSet& v) {
    const FinSpace& sp = inst.source();
    const FinSpace& target = inst.target();
    if (x < 0 || x >= sp.size())
        fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
    if (!target.is_open(v) || !v.contains(f(x)))
        fail(ErrorCode::invariant_violation,
             "V " + v.to_string() + " must be an open neighbourhood of the image of " +
                 std::to_string(x));
    PointSet bound = sp.closure(restrict_preimage(inst.dense_set(), inst.partial_map(), v));
    PointSet closure_v = target.closure(v);
    for (const PointSet& ox : sp.opens()) {
        if (!ox.contains(x)) continue;
        if (!ox.subset_of(bound)) continue;
        if (f.image(ox).subset_of(closure_v)) return ox;
    }
    fail(ErrorCode::no_witness,
         "no open around point " + std::to_string(x) + " fits inside " + bound.to_string() +
             " with image inside " + closure_v.to_string());
}

/// For a regular target the closure condition decides continuous
/// extendability outright: construct the extension and insist it is
/// continuous, or report that no continuous extension exists.
inline TotalMap regular_continuous_extension(const ExtensionInstance& inst,
                                               TieBreak tie = TieBreak::min) {
    if (!inst.target().is_regular())
        fail(ErrorCode::not_regular, "the target space is not regular");
    ConditionReport report = check_conditions(inst);
    if (!report.sufficient_holds)
        fail(ErrorCode::no_continuous_extension,
             "the closure condition fails at point " +
                 std::to_string(*report.sufficient_failure) +
                 "; no continuous extension exists");
    TotalMap f = construct_extension(inst, tie);
    if (!is_continuous(f))
        throw std::logic_error("extension into a regular target failed the continuity check");
    return f;
}

}  // namespace topo

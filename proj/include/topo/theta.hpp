#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "topo/errors.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"

namespace topo {

/// Witness for a hull of level alpha over a base set: an increasing sequence
/// U_0 ⊆ ... ⊆ U_alpha of opens, each containing the base, with
/// closure(U_k) ⊆ U_{k+1}. The top U_alpha equals the union of the chain.
struct HullChain {
    PointSet base;
    int alpha = 0;
    std::vector<PointSet> chain;  // size alpha + 1
};

namespace detail {

inline void check_alpha(int alpha) {
    if (alpha < 0) fail(ErrorCode::invariant_violation, "alpha must be non-negative");
}

/// One level step: from the family T_k to T_{k+1} = {open V : closure(W) ⊆ V
/// for some W ∈ T_k}. The families are up-closed and decrease with k, so the
/// recursion stabilizes after at most |opens| steps.
inline std::vector<PointSet> hull_level_step(const FinSpace& sp,
                                             const std::vector<PointSet>& current) {
    std::vector<PointSet> closures;
    closures.reserve(current.size());
    for (const PointSet& w : current) closures.push_back(sp.closure(w));
    std::vector<PointSet> next;
    for (const PointSet& v : sp.opens()) {
        for (const PointSet& c : closures) {
            if (c.subset_of(v)) {
                next.push_back(v);
                break;
            }
        }
    }
    return next;
}

inline std::vector<PointSet> hull_level_base(const FinSpace& sp, const PointSet& a) {
    std::vector<PointSet> t0;
    for (const PointSet& v : sp.opens())
        if (a.subset_of(v)) t0.push_back(v);
    return t0;
}

inline std::vector<PointSet> minimal_members(std::vector<PointSet> family) {
    std::vector<PointSet> out;
    for (const PointSet& v : family) {
        bool minimal = true;
        for (const PointSet& w : family) {
            if (w != v && w.subset_of(v)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// All opens that top some valid hull chain of level alpha over A, via the
/// level recursion T_0(A) = {open V ⊇ A}, T_{k+1}(A) = {open V : ∃ W ∈ T_k,
/// closure(W) ⊆ V}. The result always contains the full set. With
/// minimal_only, only inclusion-minimal tops are returned.
inline std::vector<PointSet> hull_tops(const FinSpace& sp, const PointSet& a, int alpha,
                                       bool minimal_only = false) {
    if (a.universe() != sp.size())
        fail(ErrorCode::universe_mismatch, "base set universe does not match the space");
    detail::check_alpha(alpha);
    std::vector<PointSet> tops = detail::hull_level_base(sp, a);
    for (int k = 0; k < alpha; ++k) tops = detail::hull_level_step(sp, tops);
    if (minimal_only) tops = detail::minimal_members(std::move(tops));
    return tops;
}

/// Smallest k at which the level recursion over A becomes stationary
/// (T_k = T_{k+1}); at most |opens| since the families strictly shrink
/// until they stabilize.
inline int hull_stabilization_level(const FinSpace& sp, const PointSet& a) {
    std::vector<PointSet> tops = detail::hull_level_base(sp, a);
    int k = 0;
    while (true) {
        std::vector<PointSet> next = detail::hull_level_step(sp, tops);
        if (next == tops) return k;
        tops = std::move(next);
        ++k;
    }
}

/// One valid chain ending at the given top, greedy: at each level the
/// canonical-order-first open consistent with reaching the top is chosen.
inline HullChain witness_chain(const FinSpace& sp, const PointSet& a, int alpha,
                               const PointSet& top) {
    if (a.universe() != sp.size() || top.universe() != sp.size())
        fail(ErrorCode::universe_mismatch, "chain sets must live over the space's universe");
    detail::check_alpha(alpha);

    // Backward reachability: B[k] = opens containing A from which the top is
    // reachable in alpha - k closure steps.
    std::vector<std::vector<PointSet>> levels(static_cast<std::size_t>(alpha) + 1);
    levels[static_cast<std::size_t>(alpha)] = {top};
    for (int k = alpha - 1; k >= 0; --k) {
        std::vector<PointSet> prev;
        for (const PointSet& w : sp.opens()) {
            if (!a.subset_of(w)) continue;
            PointSet cw = sp.closure(w);
            for (const PointSet& v : levels[static_cast<std::size_t>(k) + 1]) {
                if (cw.subset_of(v)) {
                    prev.push_back(w);
                    break;
                }
            }
        }
        levels[static_cast<std::size_t>(k)] = std::move(prev);
    }
    if (!sp.is_open(top) || !a.subset_of(top) || levels[0].empty())
        fail(ErrorCode::not_a_hull_top,
             top.to_string() + " does not top any level-" + std::to_string(alpha) +
                 " hull chain over " + a.to_string());

    HullChain out;
    out.base = a;
    out.alpha = alpha;
    out.chain.reserve(static_cast<std::size_t>(alpha) + 1);
    out.chain.push_back(levels[0].front());
    for (int k = 1; k < alpha; ++k) {
        PointSet prev_closure = sp.closure(out.chain.back());
        bool found = false;
        for (const PointSet& w : levels[static_cast<std::size_t>(k)]) {
            if (prev_closure.subset_of(w)) {
                out.chain.push_back(w);
                found = true;
                break;
            }
        }
        if (!found)
            fail(ErrorCode::not_a_hull_top, "chain construction dead-ended; top is not reachable");
    }
    if (alpha >= 1) out.chain.push_back(top);
    return out;
}

/// Points whose every level-alpha hull of the singleton has a closure
/// meeting A. Level 0 is the ordinary closure. Only inclusion-minimal tops
/// are tested; larger tops have larger closures, so minimal tops decide.
inline PointSet theta_closure(const FinSpace& sp, const PointSet& a, int alpha) {
    if (a.universe() != sp.size())
        fail(ErrorCode::universe_mismatch, "set universe does not match the space");
    detail::check_alpha(alpha);
    if (alpha == 0) return sp.closure(a);
    PointSet out = sp.empty_set();
    for (int x = 0; x < sp.size(); ++x) {
        bool in = true;
        for (const PointSet& v : hull_tops(sp, PointSet::singleton(sp.size(), x), alpha, true)) {
            if (!sp.closure(v).intersects(a)) {
                in = false;
                break;
            }
        }
        if (in) out.add(x);
    }
    return out;
}

/// Points whose every open neighbourhood has a closure meeting A; the
/// comparison operator that quantifies over all neighbourhoods rather than
/// hull tops.
inline PointSet classical_theta_closure(const FinSpace& sp, const PointSet& a) {
    if (a.universe() != sp.size())
        fail(ErrorCode::universe_mismatch, "set universe does not match the space");
    PointSet out = sp.empty_set();
    for (int x = 0; x < sp.size(); ++x) {
        bool in = true;
        for (const PointSet& v : sp.opens()) {
            if (v.contains(x) && !sp.closure(v).intersects(a)) {
                in = false;
                break;
            }
        }
        if (in) out.add(x);
    }
    return out;
}

/// Read-mostly memo for hull and θ-closure queries against one space.
/// Sweeps create one per worker; results are identical with or without it.
class ThetaCache {
public:
    struct SingletonTops {
        std::vector<PointSet> tops;      // inclusion-minimal hull tops of {x}
        std::vector<PointSet> closures;  // their closures, same order
    };

    explicit ThetaCache(const FinSpace& sp) : sp_(&sp) {}

    const FinSpace& space() const noexcept { return *sp_; }

    /// Inclusion-minimal level-alpha hull tops of {x} with their closures.
    const SingletonTops& singleton_tops(int x, int alpha) {
        detail::check_alpha(alpha);
        if (x < 0 || x >= sp_->size())
            fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
        if (singleton_.size() <= static_cast<std::size_t>(alpha))
            singleton_.resize(static_cast<std::size_t>(alpha) + 1);
        auto& slot = singleton_[static_cast<std::size_t>(alpha)];
        if (slot.empty()) slot.resize(static_cast<std::size_t>(sp_->size()));
        auto& entry = slot[static_cast<std::size_t>(x)];
        if (!entry) {
            SingletonTops st;
            st.tops = hull_tops(*sp_, PointSet::singleton(sp_->size(), x), alpha, true);
            st.closures.reserve(st.tops.size());
            for (const PointSet& v : st.tops) st.closures.push_back(sp_->closure(v));
            entry = std::move(st);
        }
        return *entry;
    }

    PointSet theta_closure(const PointSet& a, int alpha) {
        detail::check_alpha(alpha);
        if (a.universe() != sp_->size())
            fail(ErrorCode::universe_mismatch, "set universe does not match the cached space");
        if (alpha == 0) return sp_->closure(a);
        std::uint64_t key = (static_cast<std::uint64_t>(alpha) << 32) | a.bits();
        auto it = closure_memo_.find(key);
        if (it != closure_memo_.end()) return PointSet::from_bits(sp_->size(), it->second);
        PointSet out = sp_->empty_set();
        for (int x = 0; x < sp_->size(); ++x) {
            bool in = true;
            for (const PointSet& c : singleton_tops(x, alpha).closures) {
                if (!c.intersects(a)) {
                    in = false;
                    break;
                }
            }
            if (in) out.add(x);
        }
        closure_memo_.emplace(key, out.bits());
        return out;
    }

private:
    const FinSpace* sp_;
    // singleton_[alpha][x], lazily filled
    std::vector<std::vector<std::optional<SingletonTops>>> singleton_;
    std::unordered_map<std::uint64_t, std::uint32_t> closure_memo_;
};

}  // namespace topo

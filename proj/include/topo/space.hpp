#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "topo/errors.hpp"
#include "topo/point_set.hpp"

namespace topo {

/// A finite topological space on points {0..n-1}: a validated family of open
/// sets containing the empty and full sets and closed under pairwise union
/// and intersection. The family is stored in canonical order (cardinality,
/// then canonical set order) with no duplicates, and every point's minimal
/// neighbourhood, the intersection of all opens containing it, is
/// precomputed at build time. Instances are immutable.
class FinSpace {
public:
    static FinSpace build(int n, std::vector<PointSet> opens) {
        if (n < 1)
            fail(ErrorCode::invariant_violation, "a space needs at least one point");
        if (n > PointSet::max_universe)
            fail(ErrorCode::size_guard_exceeded,
                 "spaces larger than " + std::to_string(PointSet::max_universe) +
                     " points are not supported");
        FinSpace sp;
        sp.n_ = n;
        for (const PointSet& u : opens) {
            if (u.universe() != n)
                fail(ErrorCode::universe_mismatch,
                     "open set " + u.to_string() + " declared over universe of size " +
                         std::to_string(u.universe()) + ", space has " + std::to_string(n));
        }
        sp.opens_ = std::move(opens);
        sp.canonicalize();
        sp.validate();
        sp.index_masks();
        sp.compute_min_nbhds();
        return sp;
    }

    static FinSpace build(int n, const std::vector<std::vector<int>>& opens) {
        std::vector<PointSet> sets;
        sets.reserve(opens.size());
        for (const auto& pts : opens) {
            PointSet u = PointSet::empty(n < 1 ? 1 : n);
            for (int p : pts) {
                if (p < 0 || p >= n)
                    fail(ErrorCode::point_out_of_range,
                         "open set lists point " + std::to_string(p) +
                             " outside universe of size " + std::to_string(n));
                u.add(p);
            }
            sets.push_back(u);
        }
        return build(n, std::move(sets));
    }

    static FinSpace discrete(int n) {
        std::vector<PointSet> opens;
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m)
            opens.push_back(PointSet::from_bits(n, m));
        return build(n, std::move(opens));
    }

    static FinSpace indiscrete(int n) {
        return build(n, std::vector<PointSet>{PointSet::empty(n), PointSet::full(n)});
    }

    int size() const noexcept { return n_; }
    const std::vector<PointSet>& opens() const noexcept { return opens_; }
    PointSet empty_set() const { return PointSet::empty(n_); }
    PointSet full_set() const { return PointSet::full(n_); }

    bool is_open(const PointSet& u) const {
        check_universe(u);
        return std::binary_search(masks_.begin(), masks_.end(), u.bits());
    }

    /// Intersection of all opens containing x; itself open in a finite space.
    const PointSet& min_nbhd(int x) const {
        if (x < 0 || x >= n_)
            fail(ErrorCode::point_out_of_range,
                 "point " + std::to_string(x) + " outside universe of size " + std::to_string(n_));
        return min_nbhd_[static_cast<std::size_t>(x)];
    }

    /// [A] = {x : every open containing x meets A}; computed through the
    /// finite-space characterization x ∈ [A] iff min_nbhd(x) meets A.
    PointSet closure(const PointSet& a) const {
        check_universe(a);
        PointSet out = empty_set();
        for (int x = 0; x < n_; ++x)
            if (min_nbhd_[static_cast<std::size_t>(x)].intersects(a)) out.add(x);
        return out;
    }

    /// True iff closure(S) is the whole space; equivalently every nonempty
    /// open meets S.
    bool is_dense(const PointSet& s) const { return closure(s).is_full(); }

    /// Regularity without separation axioms: every open U around a point
    /// contains the closure of a smaller open around the same point.
    bool is_regular() const {
        for (int x = 0; x < n_; ++x) {
            for (const PointSet& u : opens_) {
                if (!u.contains(x)) continue;
                bool witnessed = false;
                for (const PointSet& v : opens_) {
                    if (v.contains(x) && closure(v).subset_of(u)) {
                        witnessed = true;
                        break;
                    }
                }
                if (!witnessed) return false;
            }
        }
        return true;
    }

    bool operator==(const FinSpace& other) const {
        return n_ == other.n_ && opens_ == other.opens_;
    }

private:
    FinSpace() = default;

    void canonicalize() {
        std::sort(opens_.begin(), opens_.end(),
                  [](const PointSet& a, const PointSet& b) { return canonical_less(a, b); });
        opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    }

    void validate() const {
        auto member = [&](std::uint32_t bits) {
            for (const PointSet& u : opens_)
                if (u.bits() == bits) return true;
            return false;
        };
        if (!member(0) || !member(PointSet::full(n_).bits()))
            fail(ErrorCode::missing_empty_or_full,
                 "the empty set and the full set " + PointSet::full(n_).to_string() +
                     " must both be open");
        for (std::size_t i = 0; i < opens_.size(); ++i) {
            for (std::size_t j = i + 1; j < opens_.size(); ++j) {
                std::uint32_t u = opens_[i].bits() | opens_[j].bits();
                std::uint32_t v = opens_[i].bits() & opens_[j].bits();
                if (!member(u))
                    fail(ErrorCode::not_closed_under_union,
                         "union of " + opens_[i].to_string() + " and " + opens_[j].to_string() +
                             " is " + PointSet::from_bits(n_, u).to_string() +
                             ", which is not open");
                if (!member(v))
                    fail(ErrorCode::not_closed_under_intersection,
                         "intersection of " + opens_[i].to_string() + " and " +
                             opens_[j].to_string() + " is " +
                             PointSet::from_bits(n_, v).to_string() + ", which is not open");
            }
        }
    }

    void index_masks() {
        masks_.reserve(opens_.size());
        for (const PointSet& u : opens_) masks_.push_back(u.bits());
        std::sort(masks_.begin(), masks_.end());
    }

    void compute_min_nbhds() {
        min_nbhd_.reserve(static_cast<std::size_t>(n_));
        for (int x = 0; x < n_; ++x) {
            PointSet m = full_set();
            for (const PointSet& u : opens_)
                if (u.contains(x)) m = m & u;
            min_nbhd_.push_back(m);
        }
    }

    void check_universe(const PointSet& a) const {
        if (a.universe() != n_)
            fail(ErrorCode::universe_mismatch,
                 "set over universe of size " + std::to_string(a.universe()) +
                     " used with a space of " + std::to_string(n_) + " points");
    }

    int n_ = 0;
    std::vector<PointSet> opens_;       // canonical order
    std::vector<std::uint32_t> masks_;  // sorted by raw bits, for membership tests
    std::vector<PointSet> min_nbhd_;    // per point
};

/// A subspace together with the relabeling back to the parent space:
/// to_parent[i] is the parent id of subspace point i.
struct Subspace {
    FinSpace space;
    std::vector<int> to_parent;
};

/// Topology induced on a nonempty S: points of S relabeled 0..|S|-1 in
/// ascending id order, opens the deduplicated traces U ∩ S.
inline Subspace subspace_topology(const FinSpace& sp, const PointSet& s) {
    if (s.universe() != sp.size())
        fail(ErrorCode::universe_mismatch, "subset universe does not match the space");
    if (s.is_empty()) fail(ErrorCode::empty_subspace, "cannot take the subspace on the empty set");
    std::vector<int> to_parent = s.points();
    int m = static_cast<int>(to_parent.size());
    std::vector<int> to_sub(static_cast<std::size_t>(sp.size()), -1);
    for (int i = 0; i < m; ++i) to_sub[static_cast<std::size_t>(to_parent[static_cast<std::size_t>(i)])] = i;

    std::vector<PointSet> traces;
    for (const PointSet& u : sp.opens()) {
        PointSet t = PointSet::empty(m);
        (u & s).for_each([&](int p) { t.add(to_sub[static_cast<std::size_t>(p)]); });
        traces.push_back(t);
    }
    return Subspace{FinSpace::build(m, std::move(traces)), std::move(to_parent)};
}

/// Canonical order on spaces of one size: lexicographic over the canonical
/// opens sequences. Used to fix enumeration and report order.
inline bool space_canonical_less(const FinSpace& a, const FinSpace& b) {
    return std::lexicographical_compare(
        a.opens().begin(), a.opens().end(), b.opens().begin(), b.opens().end(),
        [](const PointSet& x, const PointSet& y) { return canonical_less(x, y); });
}

}  // namespace topo

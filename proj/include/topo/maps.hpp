#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "topo/errors.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"

namespace topo {

/// Spaces are immutable after construction, so maps and instances share them.
using SpaceRef = std::shared_ptr<const FinSpace>;

inline SpaceRef make_space(FinSpace sp) { return std::make_shared<const FinSpace>(std::move(sp)); }

/// A map defined on every point of its source space.
class TotalMap {
public:
    TotalMap(SpaceRef source, SpaceRef target, std::vector<int> assignment)
        : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
        if (!source_ || !target_)
            fail(ErrorCode::invariant_violation, "map requires source and target spaces");
        if (assignment_.size() != static_cast<std::size_t>(source_->size()))
            fail(ErrorCode::invariant_violation,
                 "assignment has " + std::to_string(assignment_.size()) + " entries for " +
                     std::to_string(source_->size()) + " source points");
        for (int v : assignment_)
            if (v < 0 || v >= target_->size())
                fail(ErrorCode::point_out_of_range,
                     "assignment value " + std::to_string(v) + " outside target universe of size " +
                         std::to_string(target_->size()));
    }

    static TotalMap identity(SpaceRef sp) {
        std::vector<int> a(static_cast<std::size_t>(sp->size()));
        for (int x = 0; x < sp->size(); ++x) a[static_cast<std::size_t>(x)] = x;
        SpaceRef copy = sp;
        return TotalMap(std::move(sp), std::move(copy), std::move(a));
    }

    static TotalMap constant(SpaceRef source, SpaceRef target, int y) {
        std::vector<int> a(static_cast<std::size_t>(source->size()), y);
        return TotalMap(std::move(source), std::move(target), std::move(a));
    }

    const FinSpace& source() const noexcept { return *source_; }
    const FinSpace& target() const noexcept { return *target_; }
    const SpaceRef& source_ref() const noexcept { return source_; }
    const SpaceRef& target_ref() const noexcept { return target_; }
    const std::vector<int>& assignment() const noexcept { return assignment_; }

    int operator()(int x) const {
        if (x < 0 || x >= source_->size())
            fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
        return assignment_[static_cast<std::size_t>(x)];
    }

    PointSet image(const PointSet& a) const {
        if (a.universe() != source_->size())
            fail(ErrorCode::universe_mismatch, "image of a set over the wrong universe");
        PointSet out = PointSet::empty(target_->size());
        a.for_each([&](int x) { out.add(assignment_[static_cast<std::size_t>(x)]); });
        return out;
    }

    PointSet preimage(const PointSet& b) const {
        if (b.universe() != target_->size())
            fail(ErrorCode::universe_mismatch, "preimage of a set over the wrong universe");
        PointSet out = PointSet::empty(source_->size());
        for (int x = 0; x < source_->size(); ++x)
            if (b.contains(assignment_[static_cast<std::size_t>(x)])) out.add(x);
        return out;
    }

    bool operator==(const TotalMap& other) const {
        return *source_ == *other.source_ && *target_ == *other.target_ &&
               assignment_ == other.assignment_;
    }

private:
    SpaceRef source_;
    SpaceRef target_;
    std::vector<int> assignment_;
};

/// g ∘ f; f's target space must equal g's source space.
inline TotalMap compose(const TotalMap& g, const TotalMap& f) {
    if (!(f.target() == g.source()))
        fail(ErrorCode::universe_mismatch, "composition requires matching middle space");
    std::vector<int> a(static_cast<std::size_t>(f.source().size()));
    for (int x = 0; x < f.source().size(); ++x) a[static_cast<std::size_t>(x)] = g(f(x));
    return TotalMap(f.source_ref(), g.target_ref(), std::move(a));
}

/// A map defined exactly on a subset of the source points.
class PartialMap {
public:
    /// assignment holds one value per source point, -1 outside the domain.
    PartialMap(SpaceRef source, SpaceRef target, PointSet domain, std::vector<int> assignment)
        : source_(std::move(source)),
          target_(std::move(target)),
          domain_(domain),
          assignment_(std::move(assignment)) {
        if (!source_ || !target_)
            fail(ErrorCode::invariant_violation, "map requires source and target spaces");
        if (domain_.universe() != source_->size())
            fail(ErrorCode::universe_mismatch, "domain universe does not match the source space");
        if (assignment_.size() != static_cast<std::size_t>(source_->size()))
            fail(ErrorCode::invariant_violation,
                 "assignment has " + std::to_string(assignment_.size()) + " entries for " +
                     std::to_string(source_->size()) + " source points");
        for (int x = 0; x < source_->size(); ++x) {
            int v = assignment_[static_cast<std::size_t>(x)];
            if (domain_.contains(x)) {
                if (v < 0 || v >= target_->size())
                    fail(ErrorCode::point_out_of_range,
                         "value " + std::to_string(v) + " at point " + std::to_string(x) +
                             " outside target universe of size " + std::to_string(target_->size()));
            } else if (v != -1) {
                fail(ErrorCode::invariant_violation,
                     "assignment defined at point " + std::to_string(x) + " outside the domain");
            }
        }
    }

    static PartialMap from_pairs(SpaceRef source, SpaceRef target,
                                 const std::vector<std::pair<int, int>>& pairs) {
        PointSet domain = PointSet::empty(source->size());
        std::vector<int> a(static_cast<std::size_t>(source->size()), -1);
        for (auto [x, y] : pairs) {
            if (x < 0 || x >= source->size())
                fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
            if (domain.contains(x))
                fail(ErrorCode::invariant_violation,
                     "point " + std::to_string(x) + " assigned twice");
            domain.add(x);
            a[static_cast<std::size_t>(x)] = y;
        }
        return PartialMap(std::move(source), std::move(target), domain, std::move(a));
    }

    const FinSpace& source() const noexcept { return *source_; }
    const FinSpace& target() const noexcept { return *target_; }
    const SpaceRef& source_ref() const noexcept { return source_; }
    const SpaceRef& target_ref() const noexcept { return target_; }
    const PointSet& domain() const noexcept { return domain_; }
    const std::vector<int>& assignment() const noexcept { return assignment_; }

    int operator()(int x) const {
        if (x < 0 || x >= source_->size())
            fail(ErrorCode::point_out_of_range, "point " + std::to_string(x));
        if (!domain_.contains(x))
            fail(ErrorCode::point_out_of_range,
                 "point " + std::to_string(x) + " is outside the map's domain");
        return assignment_[static_cast<std::size_t>(x)];
    }

    /// Image of M; M must lie inside the domain.
    PointSet image(const PointSet& m) const {
        if (m.universe() != source_->size())
            fail(ErrorCode::universe_mismatch, "image of a set over the wrong universe");
        if (!m.subset_of(domain_))
            fail(ErrorCode::invariant_violation,
                 "image requested for " + m.to_string() + ", which leaves the domain " +
                     domain_.to_string());
        PointSet out = PointSet::empty(target_->size());
        m.for_each([&](int x) { out.add(assignment_[static_cast<std::size_t>(x)]); });
        return out;
    }

    bool operator==(const PartialMap& other) const {
        return *source_ == *other.source_ && *target_ == *other.target_ &&
               domain_ == other.domain_ && assignment_ == other.assignment_;
    }

private:
    SpaceRef source_;
    SpaceRef target_;
    PointSet domain_;
    std::vector<int> assignment_;
};

}  // namespace topo

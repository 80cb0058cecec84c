#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "topo/errors.hpp"

namespace topo {

/// A subset of the point universe {0..n-1} of some space, packed into a
/// 32-bit mask. Set operations require both operands to share the same
/// universe size; mixing sizes throws UniverseMismatch.
class PointSet {
public:
    static constexpr int max_universe = 32;

    PointSet() = default;

    static PointSet empty(int universe) { return PointSet(universe, 0); }

    static PointSet full(int universe) { return PointSet(universe, mask_for(universe)); }

    static PointSet singleton(int universe, int x) {
        PointSet s = empty(universe);
        s.add(x);
        return s;
    }

    static PointSet from_bits(int universe, std::uint32_t bits) {
        PointSet s = empty(universe);
        if ((bits & ~mask_for(universe)) != 0)
            fail(ErrorCode::point_out_of_range,
                 "bit mask has points outside universe of size " + std::to_string(universe));
        s.bits_ = bits;
        return s;
    }

    static PointSet from_points(int universe, const std::vector<int>& points) {
        PointSet s = empty(universe);
        for (int p : points) s.add(p);
        return s;
    }

    int universe() const noexcept { return universe_; }
    std::uint32_t bits() const noexcept { return bits_; }
    int count() const noexcept { return std::popcount(bits_); }
    bool is_empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept { return bits_ == mask_for(universe_); }

    bool contains(int x) const {
        check_point(x);
        return (bits_ >> x) & 1u;
    }

    void add(int x) {
        check_point(x);
        bits_ |= std::uint32_t{1} << x;
    }

    void remove(int x) {
        check_point(x);
        bits_ &= ~(std::uint32_t{1} << x);
    }

    PointSet with(int x) const {
        PointSet s = *this;
        s.add(x);
        return s;
    }

    bool subset_of(const PointSet& other) const {
        check_universe(other);
        return (bits_ & ~other.bits_) == 0;
    }

    bool intersects(const PointSet& other) const {
        check_universe(other);
        return (bits_ & other.bits_) != 0;
    }

    PointSet operator&(const PointSet& other) const {
        check_universe(other);
        return PointSet(universe_, bits_ & other.bits_);
    }

    PointSet operator|(const PointSet& other) const {
        check_universe(other);
        return PointSet(universe_, bits_ | other.bits_);
    }

    PointSet operator-(const PointSet& other) const {
        check_universe(other);
        return PointSet(universe_, bits_ & ~other.bits_);
    }

    PointSet complement() const { return PointSet(universe_, ~bits_ & mask_for(universe_)); }

    bool operator==(const PointSet& other) const = default;

    /// Member ids in ascending order.
    std::vector<int> points() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int x) { out.push_back(x); });
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        std::uint32_t rest = bits_;
        while (rest != 0) {
            int x = std::countr_zero(rest);
            f(x);
            rest &= rest - 1;
        }
    }

    /// Smallest member; the set must be nonempty.
    int min_point() const {
        if (is_empty()) fail(ErrorCode::invariant_violation, "min_point of the empty set");
        return std::countr_zero(bits_);
    }

    int max_point() const {
        if (is_empty()) fail(ErrorCode::invariant_violation, "max_point of the empty set");
        return 31 - std::countl_zero(bits_);
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for_each([&](int x) {
            if (!first) out += ", ";
            out += std::to_string(x);
            first = false;
        });
        out += "}";
        return out;
    }

private:
    PointSet(int universe, std::uint32_t bits) : universe_(universe), bits_(bits) {}

    static std::uint32_t mask_for(int universe) {
        if (universe < 0 || universe > max_universe)
            fail(ErrorCode::size_guard_exceeded,
                 "universe size " + std::to_string(universe) + " outside supported range 0.." +
                     std::to_string(max_universe));
        return universe == max_universe ? ~std::uint32_t{0}
                                        : (std::uint32_t{1} << universe) - 1;
    }

    void check_point(int x) const {
        if (x < 0 || x >= universe_)
            fail(ErrorCode::point_out_of_range,
                 "point " + std::to_string(x) + " outside universe of size " +
                     std::to_string(universe_));
    }

    void check_universe(const PointSet& other) const {
        if (universe_ != other.universe_)
            fail(ErrorCode::universe_mismatch,
                 "sets over universes of size " + std::to_string(universe_) + " and " +
                     std::to_string(other.universe_));
    }

    int universe_ = 0;
    std::uint32_t bits_ = 0;
};

/// Canonical order on subsets of one universe: by cardinality, then the set
/// whose smallest non-shared point is smaller comes first. This matches the
/// order used in serialized files, e.g. {} < {0} < {2} < {0,2} < {0,1,2}.
inline bool canonical_less(const PointSet& a, const PointSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    if (a.bits() == b.bits()) return false;
    std::uint32_t diff = a.bits() ^ b.bits();
    std::uint32_t low = diff & (~diff + 1);
    return (a.bits() & low) != 0;
}

}  // namespace topo

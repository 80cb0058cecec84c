#pragma once

// Shared builders for the test suite.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "topo/continuity.hpp"
#include "topo/enumerate.hpp"
#include "topo/extension.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"

namespace support {

using topo::ExtensionInstance;
using topo::FinSpace;
using topo::PartialMap;
using topo::PointSet;
using topo::SpaceRef;
using topo::TotalMap;

inline SpaceRef sierpinski() {
    static SpaceRef sp = topo::make_space(FinSpace::build(2, {{}, {0}, {0, 1}}));
    return sp;
}

// Three points where the middle one is everywhere close to the outer two.
inline SpaceRef x3() {
    static SpaceRef sp = topo::make_space(FinSpace::build(3, {{}, {0}, {2}, {0, 2}, {0, 1, 2}}));
    return sp;
}

// Non-regular three-point target whose nonempty opens all close up to the
// full set.
inline SpaceRef ysp() {
    static SpaceRef sp =
        topo::make_space(FinSpace::build(3, {{}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}));
    return sp;
}

inline SpaceRef discrete(int n) {
    static std::map<int, SpaceRef> memo;
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, topo::make_space(FinSpace::discrete(n))).first;
    return it->second;
}

inline SpaceRef indiscrete(int n) {
    static std::map<int, SpaceRef> memo;
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, topo::make_space(FinSpace::indiscrete(n))).first;
    return it->second;
}

inline const std::vector<SpaceRef>& all_spaces(int n) {
    static std::map<int, std::vector<SpaceRef>> memo;
    auto it = memo.find(n);
    if (it == memo.end()) {
        std::vector<SpaceRef> refs;
        for (FinSpace& sp : topo::enumerate_topologies(n))
            refs.push_back(topo::make_space(std::move(sp)));
        it = memo.emplace(n, std::move(refs)).first;
    }
    return it->second;
}

inline TotalMap total_map(SpaceRef source, SpaceRef target, std::vector<int> assignment) {
    return TotalMap(std::move(source), std::move(target), std::move(assignment));
}

inline ExtensionInstance instance(SpaceRef x, SpaceRef y, const std::vector<int>& s_points,
                                  const std::vector<int>& values) {
    PointSet s = PointSet::from_points(x->size(), s_points);
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < s_points.size(); ++i)
        pairs.emplace_back(s_points[i], values[i]);
    return ExtensionInstance(x, y, s, PartialMap::from_pairs(x, y, pairs));
}

// The bundled three-point gap instance: two outer points mapped to the two
// targets whose singleton closures miss each other.
inline ExtensionInstance gap_instance() { return instance(x3(), ysp(), {0, 2}, {0, 1}); }

// All subsets of the space's universe.
inline std::vector<PointSet> all_subsets(const FinSpace& sp) {
    std::vector<PointSet> out;
    const std::uint32_t limit = std::uint32_t{1} << sp.size();
    for (std::uint32_t bits = 0; bits < limit; ++bits)
        out.push_back(PointSet::from_bits(sp.size(), bits));
    return out;
}

// All total assignments source -> target, lexicographic.
inline std::vector<std::vector<int>> all_assignments(int source_size, int target_size) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(source_size), 0);
    while (true) {
        out.push_back(a);
        std::size_t pos = a.size();
        bool done = true;
        while (pos-- > 0) {
            if (++a[pos] < target_size) {
                done = false;
                break;
            }
            a[pos] = 0;
        }
        if (done) break;
    }
    return out;
}

// Every valid instance with source size up to nx_max and target size up to
// ny_max, built through the public constructors only: all spaces, all dense
// subsets, all assignments that are continuous on the subspace.
template <class Fn>
void for_each_instance(int nx_max, int ny_max, Fn&& fn) {
    for (int nx = 1; nx <= nx_max; ++nx) {
        for (const SpaceRef& x : all_spaces(nx)) {
            const std::uint32_t s_limit = std::uint32_t{1} << nx;
            for (std::uint32_t s_bits = 1; s_bits < s_limit; ++s_bits) {
                PointSet s = PointSet::from_bits(nx, s_bits);
                if (!x->is_dense(s)) continue;
                topo::Subspace sub = topo::subspace_topology(*x, s);
                SpaceRef sub_ref = topo::make_space(std::move(sub.space));
                std::vector<int> s_points = s.points();
                for (int ny = 1; ny <= ny_max; ++ny) {
                    for (const SpaceRef& y : all_spaces(ny)) {
                        for (const auto& values :
                             all_assignments(static_cast<int>(s_points.size()), ny)) {
                            if (!topo::is_continuous(TotalMap(sub_ref, y, values))) continue;
                            fn(instance(x, y, s_points, values));
                        }
                    }
                }
            }
        }
    }
}

}  // namespace support

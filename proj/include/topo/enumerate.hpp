#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "topo/errors.hpp"
#include "topo/space.hpp"

namespace topo {

namespace detail {

/// Minimal-neighbourhood tables of all topologies on n points: every vector
/// rows with rows[x] ∋ x (reflexive) and y ∈ rows[x] ⇒ rows[y] ⊆ rows[x]
/// (transitive). Topologies on a finite set correspond one-to-one to such
/// tables; the opens are exactly the sets U with rows[x] ⊆ U for all x ∈ U.
inline void for_each_min_nbhd_table(int n, const auto& visit) {
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
    // Odometer over the free bits of each row (bit x of row x is pinned).
    std::vector<std::uint32_t> free_bits(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) free_bits[static_cast<std::size_t>(x)] = full & ~(std::uint32_t{1} << x);

    std::vector<std::uint32_t> counter(static_cast<std::size_t>(n), 0);
    while (true) {
        for (int x = 0; x < n; ++x) {
            // Spread counter bits over the row's free positions.
            std::uint32_t row = std::uint32_t{1} << x;
            std::uint32_t c = counter[static_cast<std::size_t>(x)];
            std::uint32_t fb = free_bits[static_cast<std::size_t>(x)];
            while (fb != 0) {
                std::uint32_t low = fb & (~fb + 1);
                if (c & 1u) row |= low;
                c >>= 1;
                fb &= fb - 1;
            }
            rows[static_cast<std::size_t>(x)] = row;
        }
        bool transitive = true;
        for (int x = 0; x < n && transitive; ++x) {
            std::uint32_t row = rows[static_cast<std::size_t>(x)];
            std::uint32_t rest = row;
            while (rest != 0) {
                int y = std::countr_zero(rest);
                rest &= rest - 1;
                if ((rows[static_cast<std::size_t>(y)] & ~row) != 0) {
                    transitive = false;
                    break;
                }
            }
        }
        if (transitive) visit(rows);

        int pos = 0;
        const std::uint32_t limit = std::uint32_t{1} << (n - 1);
        while (pos < n) {
            if (++counter[static_cast<std::size_t>(pos)] < limit) break;
            counter[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
}

inline FinSpace space_from_min_nbhds(int n, const std::vector<std::uint32_t>& rows) {
    std::vector<PointSet> opens;
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t u = 0; u < limit; ++u) {
        bool open = true;
        std::uint32_t rest = u;
        while (rest != 0) {
            int x = std::countr_zero(rest);
            rest &= rest - 1;
            if ((rows[static_cast<std::size_t>(x)] & ~u) != 0) {
                open = false;
                break;
            }
        }
        if (open) opens.push_back(PointSet::from_bits(n, u));
    }
    return FinSpace::build(n, std::move(opens));
}

}  // namespace detail

/// Every topology on n labeled points, in canonical order with no
/// duplicates. With t0_only, spaces where two points share the same open-set
/// membership are skipped. Guarded at n ≤ 4; n = 5 needs size_override.
inline std::vector<FinSpace> enumerate_topologies(int n, bool t0_only = false,
                                                  bool size_override = false) {
    if (n < 1) fail(ErrorCode::invariant_violation, "enumeration needs at least one point");
    const int cap = size_override ? 5 : 4;
    if (n > cap)
        fail(ErrorCode::size_guard_exceeded,
             "enumeration of topologies on " + std::to_string(n) + " points exceeds the guard (" +
                 std::to_string(cap) + ")");
    std::vector<FinSpace> out;
    detail::for_each_min_nbhd_table(n, [&](const std::vector<std::uint32_t>& rows) {
        if (t0_only) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rows[static_cast<std::size_t>(i)] == rows[static_cast<std::size_t>(j)]) return;
        }
        out.push_back(detail::space_from_min_nbhds(n, rows));
    });
    std::sort(out.begin(), out.end(), space_canonical_less);
    return out;
}

inline long long count_topologies(int n, bool t0_only = false, bool size_override = false) {
    return static_cast<long long>(enumerate_topologies(n, t0_only, size_override).size());
}

}  // namespace topo

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "topo/continuity.hpp"
#include "topo/enumerate.hpp"
#include "topo/errors.hpp"
#include "topo/extension.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"
#include "topo/theta.hpp"

namespace topo {

struct SweepOptions {
    int jobs = 1;
    bool size_override = false;
};

/// Canonical identification of one checked object inside a sweep: the
/// source/target topology indices (within the canonical enumeration of
/// their size), the dense set, the assignment on it, an optional total
/// extension, and the level when one applies. Reports sort by these fields,
/// which is what makes reruns and parallel runs byte-identical.
struct SweepItem {
    int x_n = 0;
    long long x_index = -1;
    int y_n = 0;
    long long y_index = -1;
    std::vector<int> s;  // dense-set points, ascending
    std::vector<int> f;  // values on s (or a full assignment when s is empty)
    std::vector<int> extension;
    int alpha = -1;
};

struct Discrepancy {
    std::string claim;
    SweepItem item;
    std::string detail;
};

struct GapResult {
    ExtensionInstance instance;
    TotalMap witness;
    SweepItem item;
};

struct VerificationReport {
    std::string check;
    std::vector<std::pair<std::string, long long>> parameters;
    std::vector<std::pair<std::string, long long>> counts;
    std::vector<Discrepancy> discrepancies;
    double elapsed_seconds = 0.0;  // informational only; kept out of serialized reports

    bool pass() const noexcept { return discrepancies.empty(); }

    long long count(const std::string& key) const {
        for (const auto& [k, v] : counts)
            if (k == key) return v;
        return -1;
    }
};

namespace detail {

/// Lexicographic odometer over the points of X outside S; the base
/// assignment holds f on S and the last free point varies fastest.
class AssignmentOdometer {
public:
    explicit AssignmentOdometer(const ExtensionInstance& inst)
        : base_(static_cast<std::size_t>(inst.source().size()), 0),
          target_size_(inst.target().size()) {
        for (int x = 0; x < inst.source().size(); ++x) {
            if (inst.dense_set().contains(x))
                base_[static_cast<std::size_t>(x)] = inst.partial_map()(x);
            else
                free_points_.push_back(x);
        }
        count_ = 1;
        for (std::size_t i = 0; i < free_points_.size(); ++i) {
            count_ *= target_size_;
            if (count_ > 1000000)
                fail(ErrorCode::size_guard_exceeded,
                     "extension enumeration would exceed 10^6 candidates");
        }
    }

    long long count() const noexcept { return count_; }

    /// The next assignment, or nullptr when exhausted. The pointer stays
    /// valid until the following call.
    const std::vector<int>* next() {
        if (done_) return nullptr;
        if (!started_) {
            started_ = true;
            return &base_;
        }
        for (std::size_t i = free_points_.size(); i-- > 0;) {
            int& digit = base_[static_cast<std::size_t>(free_points_[i])];
            if (++digit < target_size_) return &base_;
            digit = 0;
        }
        done_ = true;
        return nullptr;
    }

private:
    std::vector<int> base_;
    std::vector<int> free_points_;
    int target_size_;
    long long count_ = 0;
    bool started_ = false;
    bool done_ = false;
};

template <class Fn>
void parallel_for_index(std::size_t total, int jobs, Fn&& fn) {
    if (jobs <= 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= total) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

struct SizedSpace {
    int n = 0;
    long long index = -1;
    SpaceRef space;
};

/// Topologies of every size 1..n_max, flattened in canonical order.
inline std::vector<SizedSpace> spaces_up_to(int n_max, bool size_override) {
    std::vector<SizedSpace> out;
    for (int n = 1; n <= n_max; ++n) {
        long long index = 0;
        for (FinSpace& sp : enumerate_topologies(n, false, size_override))
            out.push_back(SizedSpace{n, index++, make_space(std::move(sp))});
    }
    return out;
}

inline std::vector<SizedSpace> spaces_of(int n, bool size_override) {
    std::vector<SizedSpace> out;
    long long index = 0;
    for (FinSpace& sp : enumerate_topologies(n, false, size_override))
        out.push_back(SizedSpace{n, index++, make_space(std::move(sp))});
    return out;
}

/// Dense subsets of a space, in canonical set order.
inline std::vector<PointSet> dense_subsets(const FinSpace& sp) {
    std::vector<PointSet> out;
    const std::uint32_t limit = std::uint32_t{1} << sp.size();
    for (std::uint32_t bits = 1; bits < limit; ++bits) {
        PointSet s = PointSet::from_bits(sp.size(), bits);
        if (sp.is_dense(s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const PointSet& a, const PointSet& b) { return canonical_less(a, b); });
    return out;
}

/// Lexicographic odometer over value vectors of fixed length.
inline bool advance_values(std::vector<int>& values, int radix) {
    for (std::size_t i = values.size(); i-- > 0;) {
        if (++values[i] < radix) return true;
        values[i] = 0;
    }
    return false;
}

}  // namespace detail

/// All total extensions of the instance's partial map, in lexicographic
/// order over the free points (the last free point varies fastest).
/// Guarded at 10^6 candidates.
class ExtensionStream {
public:
    explicit ExtensionStream(const ExtensionInstance& inst)
        : source_(inst.source_ref()), target_(inst.target_ref()), odometer_(inst) {}

    long long count() const noexcept { return odometer_.count(); }

    std::optional<TotalMap> next() {
        const std::vector<int>* a = odometer_.next();
        if (a == nullptr) return std::nullopt;
        return TotalMap(source_, target_, *a);
    }

private:
    SpaceRef source_;
    SpaceRef target_;
    detail::AssignmentOdometer odometer_;
};

struct ExistenceResult {
    bool exists = false;
    std::optional<TotalMap> witness;  // canonical-first passing extension
    long long candidates = 0;
};

/// Decides existence of a level-alpha continuous extension by exhausting
/// every candidate.
inline ExistenceResult brute_force_existence(const ExtensionInstance& inst, int alpha,
                                             ThetaCache* y_cache = nullptr) {
    std::optional<ThetaCache> local;
    if (y_cache == nullptr) {
        local.emplace(inst.target());
        y_cache = &*local;
    }
    detail::AssignmentOdometer odometer(inst);
    ExistenceResult result;
    result.candidates = odometer.count();
    while (const std::vector<int>* a = odometer.next()) {
        if (detail::theta_verdict(inst.source(), *y_cache, *a, alpha, Alpha0Rule::continuity)
                .holds) {
            result.exists = true;
            result.witness = TotalMap(inst.source_ref(), inst.target_ref(), *a);
            break;
        }
    }
    return result;
}

/// Exhaustive agreement check between the hull-quantified continuity
/// checker and the closure-image criterion, over every topology pair of the
/// exact given sizes, every total map between them, and every level up to
/// alpha_max. Also tallies how the continuity notions compare per map.
inline VerificationReport verify_continuity_equivalence(int nx, int ny, int alpha_max,
                                                        const SweepOptions& options = {}) {
    auto started = std::chrono::steady_clock::now();
    if (nx > 4 || ny > 4)
        fail(ErrorCode::size_guard_exceeded, "equivalence sweep is guarded at 4 points");
    detail::check_alpha(alpha_max);
    std::vector<detail::SizedSpace> xs = detail::spaces_of(nx, options.size_override);
    std::vector<detail::SizedSpace> ys = detail::spaces_of(ny, options.size_override);

    struct Partial {
        long long maps = 0, checks = 0;
        long long continuous = 0, classical_weak = 0, theta1 = 0, theta1_not_classical = 0;
        std::vector<Discrepancy> discrepancies;
    };
    std::vector<Partial> slots(xs.size());

    detail::parallel_for_index(xs.size(), options.jobs, [&](std::size_t xi) {
        Partial& part = slots[xi];
        const FinSpace& x_sp = *xs[xi].space;
        for (std::size_t yi = 0; yi < ys.size(); ++yi) {
            const FinSpace& y_sp = *ys[yi].space;
            ThetaCache cache(y_sp);
            std::vector<int> assignment(static_cast<std::size_t>(x_sp.size()), 0);
            do {
                ++part.maps;
                bool cont = detail::continuity_verdict(x_sp, y_sp, assignment).holds;
                bool classical = detail::classical_verdict(x_sp, y_sp, assignment).holds;
                bool theta1 =
                    detail::hull_verdict(x_sp, cache, assignment, 1).holds;
                part.continuous += cont;
                part.classical_weak += classical;
                part.theta1 += theta1;
                part.theta1_not_classical += (theta1 && !classical);
                for (int alpha = 0; alpha <= alpha_max; ++alpha) {
                    ++part.checks;
                    bool by_hulls =
                        detail::theta_verdict(x_sp, cache, assignment, alpha,
                                              Alpha0Rule::continuity)
                            .holds;
                    bool by_criterion =
                        detail::closure_criterion_core(x_sp, cache, assignment, alpha);
                    if (by_hulls != by_criterion) {
                        SweepItem item;
                        item.x_n = nx;
                        item.x_index = xs[xi].index;
                        item.y_n = ny;
                        item.y_index = ys[yi].index;
                        item.f = assignment;
                        item.alpha = alpha;
                        part.discrepancies.push_back(
                            {"equivalence", item,
                             std::string("hull checker says ") + (by_hulls ? "true" : "false") +
                                 ", closure criterion says " +
                                 (by_criterion ? "true" : "false")});
                    }
                }
            } while (detail::advance_values(assignment, y_sp.size()));
        }
    });

    VerificationReport report;
    report.check = "lemma1";
    report.parameters = {{"nx", nx}, {"ny", ny}, {"alpha_max", alpha_max}};
    Partial total;
    for (const Partial& part : slots) {
        total.maps += part.maps;
        total.checks += part.checks;
        total.continuous += part.continuous;
        total.classical_weak += part.classical_weak;
        total.theta1 += part.theta1;
        total.theta1_not_classical += part.theta1_not_classical;
        for (const Discrepancy& d : part.discrepancies) report.discrepancies.push_back(d);
    }
    report.counts = {
        {"x_spaces", static_cast<long long>(xs.size())},
        {"y_spaces", static_cast<long long>(ys.size())},
        {"pairs", static_cast<long long>(xs.size() * ys.size())},
        {"maps", total.maps},
        {"checks", total.checks},
        {"continuous_maps", total.continuous},
        {"classical_weak_maps", total.classical_weak},
        {"theta1_maps", total.theta1},
        {"theta1_not_classical_maps", total.theta1_not_classical},
        {"discrepancies", static_cast<long long>(report.discrepancies.size())},
    };
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

namespace detail {

enum class ExtensionSweepKind { conditions, regular_target, gaps };

struct ExtensionSweepResult {
    VerificationReport report;
    std::vector<GapResult> gaps;
};

/// Shared engine behind the instance sweeps: iterate every source topology
/// of size up to nx, every dense subset, every target topology of size up
/// to ny, and every continuous assignment on the dense subset; hand each
/// instance to the kind-specific checks. Work is partitioned by source
/// topology; partial results merge in canonical order, so the outcome does
/// not depend on the worker count.
inline ExtensionSweepResult run_extension_sweep(ExtensionSweepKind kind, int nx, int ny,
                                                const SweepOptions& options) {
    auto started = std::chrono::steady_clock::now();
    const int cap = options.size_override ? 4 : 3;
    if (nx > cap || ny > cap)
        fail(ErrorCode::size_guard_exceeded,
             "instance sweep is guarded at " + std::to_string(cap) + " points");
    std::vector<SizedSpace> xs = spaces_up_to(nx, options.size_override);
    std::vector<SizedSpace> ys = spaces_up_to(ny, options.size_override);
    std::vector<char> y_regular;
    y_regular.reserve(ys.size());
    for (const SizedSpace& y : ys) y_regular.push_back(y.space->is_regular() ? 1 : 0);

    struct Partial {
        long long instances = 0, sufficient = 0, existing = 0, sufficient_and_existing = 0,
                  gap = 0;
        long long condition_holds = 0, continuous_exists = 0;
        std::vector<Discrepancy> discrepancies;
        std::vector<GapResult> gaps;
    };
    std::vector<Partial> slots(xs.size());

    detail::parallel_for_index(xs.size(), options.jobs, [&](std::size_t xi) {
        Partial& part = slots[xi];
        const SizedSpace& xe = xs[xi];
        const FinSpace& x_sp = *xe.space;
        std::vector<std::unique_ptr<ThetaCache>> caches(ys.size());

        for (const PointSet& s : dense_subsets(x_sp)) {
            Subspace sub = subspace_topology(x_sp, s);
            const std::vector<int> s_points = s.points();
            for (std::size_t yi = 0; yi < ys.size(); ++yi) {
                const SizedSpace& ye = ys[yi];
                if (kind == ExtensionSweepKind::regular_target && !y_regular[yi]) continue;
                const FinSpace& y_sp = *ye.space;
                if (!caches[yi]) caches[yi] = std::make_unique<ThetaCache>(y_sp);
                ThetaCache& cache = *caches[yi];

                std::vector<int> values(s_points.size(), 0);
                do {
                    if (!continuity_verdict(sub.space, y_sp, values).holds) continue;

                    std::vector<std::pair<int, int>> pairs;
                    pairs.reserve(s_points.size());
                    for (std::size_t i = 0; i < s_points.size(); ++i)
                        pairs.emplace_back(s_points[i], values[i]);
                    ExtensionInstance inst(xe.space, ye.space,
                                           s, PartialMap::from_pairs(xe.space, ye.space, pairs));
                    ++part.instances;

                    SweepItem item;
                    item.x_n = xe.n;
                    item.x_index = xe.index;
                    item.y_n = ye.n;
                    item.y_index = ye.index;
                    item.s = s_points;
                    item.f = values;

                    ConditionReport cond = check_conditions(inst, &cache);

                    if (kind == ExtensionSweepKind::regular_target) {
                        ExistenceResult continuous = brute_force_existence(inst, 0, &cache);
                        part.condition_holds += cond.sufficient_holds;
                        part.continuous_exists += continuous.exists;
                        if (cond.sufficient_holds != continuous.exists) {
                            part.discrepancies.push_back(
                                {"regular-target", item,
                                 std::string("closure condition ") +
                                     (cond.sufficient_holds ? "holds" : "fails") +
                                     " but a continuous extension " +
                                     (continuous.exists ? "exists" : "does not exist")});
                        } else if (cond.sufficient_holds) {
                            try {
                                TotalMap f = regular_continuous_extension(inst, TieBreak::min);
                                (void)f;
                            } catch (const std::exception& e) {
                                part.discrepancies.push_back(
                                    {"regular-target", item,
                                     std::string("constructive extension failed: ") + e.what()});
                            }
                        }
                        continue;
                    }

                    ExistenceResult existing = brute_force_existence(inst, 1, &cache);
                    part.sufficient += cond.sufficient_holds;
                    part.existing += existing.exists;
                    part.sufficient_and_existing += (cond.sufficient_holds && existing.exists);

                    if (cond.sufficient_holds) {
                        try {
                            TotalMap f = construct_extension(inst, TieBreak::min);
                            for (int p : s_points)
                                if (f(p) != inst.partial_map()(p))
                                    throw std::logic_error(
                                        "extension does not agree with the base map on S");
                        } catch (const std::exception& e) {
                            part.discrepancies.push_back(
                                {"sufficiency", item,
                                 std::string("construction failed: ") + e.what()});
                        }
                        if (!existing.exists)
                            part.discrepancies.push_back(
                                {"sufficiency", item,
                                 "closure condition holds but exhaustion found no extension"});
                    }
                    if (existing.exists && !cond.necessary_holds)
                        part.discrepancies.push_back(
                            {"necessity", item,
                             "an extension exists but the theta condition set is empty at point " +
                                 std::to_string(*cond.necessary_failure)});

                    if (!cond.sufficient_holds && existing.exists) {
                        ++part.gap;
                        if (kind == ExtensionSweepKind::gaps) {
                            SweepItem gap_item = item;
                            gap_item.extension = existing.witness->assignment();
                            if (!cond.necessary_holds)
                                part.discrepancies.push_back(
                                    {"gap-necessity", gap_item,
                                     "gap instance violates the necessary condition"});
                            part.gaps.push_back(
                                GapResult{inst, *existing.witness, std::move(gap_item)});
                        }
                    }
                } while (advance_values(values, y_sp.size()));
            }
        }
    });

    ExtensionSweepResult result;
    Partial total;
    for (Partial& part : slots) {
        total.instances += part.instances;
        total.sufficient += part.sufficient;
        total.existing += part.existing;
        total.sufficient_and_existing += part.sufficient_and_existing;
        total.gap += part.gap;
        total.condition_holds += part.condition_holds;
        total.continuous_exists += part.continuous_exists;
        for (Discrepancy& d : part.discrepancies)
            result.report.discrepancies.push_back(std::move(d));
        for (GapResult& g : part.gaps) result.gaps.push_back(std::move(g));
    }
    result.report.parameters = {{"nx", nx}, {"ny", ny}};
    switch (kind) {
        case ExtensionSweepKind::conditions:
            result.report.check = "theorem1";
            result.report.counts = {
                {"x_spaces", static_cast<long long>(xs.size())},
                {"y_spaces", static_cast<long long>(ys.size())},
                {"instances", total.instances},
                {"sufficient", total.sufficient},
                {"existing", total.existing},
                {"sufficient_and_existing", total.sufficient_and_existing},
                {"gap", total.gap},
                {"discrepancies",
                 static_cast<long long>(result.report.discrepancies.size())},
            };
            break;
        case ExtensionSweepKind::regular_target:
            result.report.check = "corollary";
            result.report.counts = {
                {"x_spaces", static_cast<long long>(xs.size())},
                {"y_spaces", static_cast<long long>(ys.size())},
                {"instances", total.instances},
                {"condition_holds", total.condition_holds},
                {"continuous_exists", total.continuous_exists},
                {"discrepancies",
                 static_cast<long long>(result.report.discrepancies.size())},
            };
            break;
        case ExtensionSweepKind::gaps:
            result.report.check = "gaps";
            result.report.counts = {
                {"x_spaces", static_cast<long long>(xs.size())},
                {"y_spaces", static_cast<long long>(ys.size())},
                {"instances", total.instances},
                {"sufficient", total.sufficient},
                {"existing", total.existing},
                {"gap", total.gap},
                {"discrepancies",
                 static_cast<long long>(result.report.discrepancies.size())},
            };
            break;
    }
    result.report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace detail

/// Exhaustive check of the extension conditions over all instances with
/// source size up to nx and target size up to ny: whenever the closure
/// condition holds, the constructive extension must succeed, agree with the
/// base map on S, and pass the level-1 check; whenever any extension exists
/// by exhaustion, the theta condition must hold.
inline VerificationReport verify_extension_conditions(int nx, int ny,
                                                      const SweepOptions& options = {}) {
    return detail::run_extension_sweep(detail::ExtensionSweepKind::conditions, nx, ny, options)
        .report;
}

/// Over the same instances restricted to regular targets: the closure
/// condition must hold exactly when a continuous extension exists.
inline VerificationReport verify_regular_extension(int nx, int ny,
                                                   const SweepOptions& options = {}) {
    return detail::run_extension_sweep(detail::ExtensionSweepKind::regular_target, nx, ny,
                                       options)
        .report;
}

struct MineResult {
    VerificationReport report;
    std::vector<GapResult> gaps;
};

/// Instances where the closure condition fails yet an extension exists by
/// exhaustion, each with the canonical-first witness. Every gap instance is
/// also checked against the theta condition.
inline MineResult mine_gaps(int nx, int ny, const SweepOptions& options = {}) {
    detail::ExtensionSweepResult raw =
        detail::run_extension_sweep(detail::ExtensionSweepKind::gaps, nx, ny, options);
    return MineResult{std::move(raw.report), std::move(raw.gaps)};
}

}  // namespace topo

#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "topo/extension.hpp"

using support::instance;
using topo::ConditionMode;
using topo::ConditionReport;
using topo::Error;
using topo::ErrorCode;
using topo::ExtensionInstance;
using topo::PointSet;
using topo::TieBreak;
using topo::TotalMap;

namespace {

ErrorCode code_of(const Error& e) { return e.code(); }

}  // namespace

TEST_CASE("instance construction validates density and continuity") {
    CHECK_NOTHROW(support::gap_instance());

    // {0} is not dense in the discrete plane.
    try {
        instance(support::discrete(2), support::discrete(2), {0}, {0});
        FAIL("expected a density failure");
    } catch (const Error& e) {
        CHECK(code_of(e) == ErrorCode::density_failed);
    }

    // On S = X the subspace is the space itself, so a non-continuous
    // assignment is rejected.
    try {
        instance(support::sierpinski(), support::discrete(2), {0, 1}, {0, 1});
        FAIL("expected a continuity failure");
    } catch (const Error& e) {
        CHECK(code_of(e) == ErrorCode::continuity_failed);
    }
}

TEST_CASE("k family examples") {
    ExtensionInstance inst = support::gap_instance();

    auto family1 = topo::k_family(inst, 1);
    REQUIRE(family1.size() == 3);
    CHECK(family1[0] == PointSet::from_points(3, {0}));
    CHECK(family1[1] == PointSet::from_points(3, {2}));
    CHECK(family1[2] == PointSet::from_points(3, {0, 2}));

    auto family0 = topo::k_family(inst, 0);
    REQUIRE(family0.size() == 2);
    CHECK(family0[0] == PointSet::from_points(3, {0}));
    CHECK(family0[1] == PointSet::from_points(3, {0, 2}));

    // With S the whole space, {x} itself is a member.
    ExtensionInstance full = instance(support::x3(), support::ysp(), {0, 1, 2}, {0, 0, 0});
    for (int x = 0; x < 3; ++x) {
        auto family = topo::k_family(full, x);
        bool found = false;
        for (const PointSet& m : family) found |= (m == PointSet::singleton(3, x));
        CHECK(found);
    }
}

TEST_CASE("k family guard") {
    auto big = topo::make_space(topo::FinSpace::indiscrete(21));
    std::vector<int> s_points, values;
    for (int i = 0; i < 21; ++i) {
        s_points.push_back(i);
        values.push_back(0);
    }
    ExtensionInstance inst = instance(big, support::discrete(1), s_points, values);
    CHECK_THROWS_MATCHES(topo::k_family(inst, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::size_guard_exceeded;
                         }));
}

TEST_CASE("k family matches the closure definition on small instances") {
    support::for_each_instance(2, 2, [](const ExtensionInstance& inst) {
        for (int x = 0; x < inst.source().size(); ++x) {
            auto fast = topo::k_family(inst, x);
            auto slow = oracle::k_family(inst, x);
            CHECK(fast == slow);
        }
    });
}

TEST_CASE("condition set examples") {
    ExtensionInstance inst = support::gap_instance();
    CHECK(topo::condition_set(inst, 1, ConditionMode::closure).is_empty());
    CHECK(topo::condition_set(inst, 1, ConditionMode::theta) == PointSet::full(3));
    // At points of S the closure-mode set keeps the image point.
    CHECK(topo::condition_set(inst, 0, ConditionMode::closure).contains(0));
    CHECK(topo::condition_set(inst, 2, ConditionMode::closure).contains(1));
}

TEST_CASE("singleton reduction equals the literal intersection on small instances") {
    support::for_each_instance(3, 3, [](const ExtensionInstance& inst) {
        if (inst.dense_set().count() > 3) return;
        for (int x = 0; x < inst.source().size(); ++x) {
            CHECK(topo::condition_set(inst, x, ConditionMode::closure) ==
                  oracle::condition_set(inst, x, ConditionMode::closure));
            CHECK(topo::condition_set(inst, x, ConditionMode::theta) ==
                  oracle::condition_set(inst, x, ConditionMode::theta));
        }
    });
}

TEST_CASE("condition report examples") {
    ConditionReport gap = topo::check_conditions(support::gap_instance());
    CHECK_FALSE(gap.sufficient_holds);
    CHECK(gap.necessary_holds);
    REQUIRE(gap.sufficient_failure.has_value());
    CHECK(*gap.sufficient_failure == 1);

    ConditionReport isolated = topo::check_conditions(
        instance(support::x3(), support::discrete(2), {0, 2}, {0, 1}));
    CHECK_FALSE(isolated.sufficient_holds);
    CHECK_FALSE(isolated.necessary_holds);
}

TEST_CASE("condition sets nest and S keeps the map point, on every small instance") {
    support::for_each_instance(3, 3, [](const ExtensionInstance& inst) {
        ConditionReport report = topo::check_conditions(inst);
        for (int x = 0; x < inst.source().size(); ++x) {
            CHECK(report.closure_sets[static_cast<std::size_t>(x)].subset_of(
                report.theta_sets[static_cast<std::size_t>(x)]));
            if (inst.dense_set().contains(x))
                CHECK(report.closure_sets[static_cast<std::size_t>(x)].contains(
                    inst.partial_map()(x)));
        }
        if (inst.dense_set() == inst.source().full_set()) CHECK(report.sufficient_holds);
    });
}

TEST_CASE("extension construction examples") {
    ExtensionInstance to_sierpinski = instance(support::x3(), support::sierpinski(), {0, 2}, {0, 1});
    TotalMap f = topo::construct_extension(to_sierpinski, TieBreak::min);
    CHECK(f.assignment() == std::vector<int>{0, 1, 1});
    // Deterministic: the same instance and tie-break reproduce the result.
    CHECK(topo::construct_extension(to_sierpinski, TieBreak::min) == f);

    ExtensionInstance full = instance(support::x3(), support::ysp(), {0, 1, 2}, {0, 0, 0});
    CHECK(topo::construct_extension(full, TieBreak::max).assignment() ==
          std::vector<int>{0, 0, 0});

    try {
        topo::construct_extension(support::gap_instance(), TieBreak::min);
        FAIL("expected the closure condition to fail");
    } catch (const Error& e) {
        CHECK(code_of(e) == ErrorCode::condition_failed);
        CHECK(std::string(e.what()).find("point 1") != std::string::npos);
    }
}

TEST_CASE("approximation examples") {
    ExtensionInstance inst = instance(support::sierpinski(), support::sierpinski(), {0}, {0});
    CHECK(topo::approximate_map(inst, TieBreak::min).assignment() == std::vector<int>{0, 0});
    TotalMap shifted = topo::approximate_map(inst, TieBreak::max);
    CHECK(shifted.assignment() == std::vector<int>{1, 1});
    // The max pick walks away from the base map on S yet stays continuous.
    CHECK(shifted(0) != inst.partial_map()(0));
    CHECK(topo::is_continuous(shifted));

    ExtensionInstance fixed = instance(support::x3(), support::discrete(1), {0, 1, 2}, {0, 0, 0});
    CHECK(topo::approximate_map(fixed, TieBreak::min).assignment() == std::vector<int>{0, 0, 0});
}

TEST_CASE("constructed extensions satisfy the advertised contracts on every small instance") {
    support::for_each_instance(3, 3, [](const ExtensionInstance& inst) {
        ConditionReport report = topo::check_conditions(inst);
        if (!report.sufficient_holds) {
            CHECK_THROWS_AS(topo::construct_extension(inst, TieBreak::min), Error);
            return;
        }
        for (TieBreak tie : {TieBreak::min, TieBreak::max}) {
            TotalMap f = topo::construct_extension(inst, tie);
            inst.dense_set().for_each([&](int s) { CHECK(f(s) == inst.partial_map()(s)); });
            CHECK(topo::is_theta_continuous(f, 1));

            TotalMap approx = topo::approximate_map(inst, tie);
            for (int x = 0; x < inst.source().size(); ++x)
                CHECK(report.closure_sets[static_cast<std::size_t>(x)].contains(approx(x)));
            CHECK(topo::is_theta_continuous(approx, 1));
        }
    });
}

TEST_CASE("restricted preimage examples") {
    ExtensionInstance inst = support::gap_instance();
    const topo::PartialMap& f = inst.partial_map();
    PointSet s = inst.dense_set();
    CHECK(topo::restrict_preimage(s, f, PointSet::from_points(3, {0})) ==
          PointSet::from_points(3, {0}));
    CHECK(topo::restrict_preimage(s, f, PointSet::full(3)) == s);
    CHECK(topo::restrict_preimage(s, f, PointSet::empty(3)) == PointSet::empty(3));
    CHECK_THROWS_AS(topo::restrict_preimage(PointSet::full(3), f, PointSet::full(3)), Error);
}

TEST_CASE("witness neighbourhood examples") {
    ExtensionInstance inst = instance(support::x3(), support::sierpinski(), {0, 2}, {0, 1});
    TotalMap f = topo::construct_extension(inst, TieBreak::min);

    CHECK(topo::witness_neighbourhood(inst, f, 1, PointSet::full(2)) == PointSet::full(3));
    CHECK(topo::witness_neighbourhood(inst, f, 0, PointSet::from_points(2, {0})) ==
          PointSet::from_points(3, {0}));

    CHECK_THROWS_AS(topo::witness_neighbourhood(inst, f, 0, PointSet::from_points(2, {1})),
                    Error);  // not a neighbourhood of F(0)
}

TEST_CASE("witness neighbourhoods exist for every constructed extension") {
    support::for_each_instance(3, 3, [](const ExtensionInstance& inst) {
        if (!topo::check_conditions(inst).sufficient_holds) return;
        TotalMap f = topo::construct_extension(inst, TieBreak::min);
        for (int x = 0; x < inst.source().size(); ++x) {
            for (const PointSet& v : inst.target().opens()) {
                if (!v.contains(f(x))) continue;
                PointSet ox = topo::witness_neighbourhood(inst, f, x, v);
                CHECK(inst.source().is_open(ox));
                CHECK(ox.contains(x));
                PointSet restricted =
                    topo::restrict_preimage(inst.dense_set(), inst.partial_map(), v);
                CHECK(ox.subset_of(inst.source().closure(restricted)));
                CHECK(f.image(ox).subset_of(inst.target().closure(v)));
            }
        }
    });
}

TEST_CASE("continuous extensions admit the preimage as a witness") {
    ExtensionInstance inst = instance(support::x3(), support::discrete(1), {0, 2}, {0, 0});
    TotalMap f = topo::construct_extension(inst, TieBreak::min);
    REQUIRE(topo::is_continuous(f));
    for (int x = 0; x < 3; ++x) {
        for (const PointSet& v : inst.target().opens()) {
            if (!v.contains(f(x))) continue;
            PointSet pre = f.preimage(v);
            PointSet restricted = topo::restrict_preimage(inst.dense_set(), inst.partial_map(), v);
            CHECK(pre.subset_of(inst.source().closure(restricted)));
            CHECK(f.image(pre).subset_of(inst.target().closure(v)));
        }
    }
}

TEST_CASE("regular-target extension examples") {
    ExtensionInstance constant = instance(support::x3(), support::discrete(1), {0, 2}, {0, 0});
    TotalMap f = topo::regular_continuous_extension(constant, TieBreak::min);
    CHECK(topo::is_continuous(f));

    ExtensionInstance split = instance(support::x3(), support::discrete(2), {0, 2}, {0, 1});
    try {
        topo::regular_continuous_extension(split, TieBreak::min);
        FAIL("expected no continuous extension");
    } catch (const Error& e) {
        CHECK(code_of(e) == ErrorCode::no_continuous_extension);
    }
    // Cross-check by exhausting both candidate values at the free point.
    for (int y = 0; y < 2; ++y) {
        TotalMap candidate(support::x3(), support::discrete(2), {0, y, 1});
        CHECK_FALSE(topo::is_continuous(candidate));
    }

    try {
        topo::regular_continuous_extension(support::gap_instance(), TieBreak::min);
        FAIL("expected the regularity precondition to fail");
    } catch (const Error& e) {
        CHECK(code_of(e) == ErrorCode::not_regular);
    }
}

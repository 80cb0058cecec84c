#include <catch_amalgamated.hpp>

#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "topo/io.hpp"
#include "topo/sweep.hpp"

using support::instance;
using topo::Error;
using topo::ErrorCode;
using topo::ExistenceResult;
using topo::ExtensionInstance;
using topo::ExtensionStream;
using topo::SweepOptions;
using topo::TotalMap;
using topo::VerificationReport;

TEST_CASE("extension stream counts and order") {
    ExtensionStream gap(support::gap_instance());
    CHECK(gap.count() == 3);
    std::vector<std::vector<int>> seen;
    while (auto f = gap.next()) seen.push_back(f->assignment());
    CHECK(seen == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}, {0, 2, 1}});

    ExtensionStream pinned(instance(support::x3(), support::ysp(), {0, 1, 2}, {0, 0, 0}));
    CHECK(pinned.count() == 1);

    // Two free points over a two-point target: the last free point runs fastest.
    ExtensionInstance two_free = instance(support::indiscrete(3), support::discrete(2), {0}, {0});
    ExtensionStream stream(two_free);
    CHECK(stream.count() == 4);
    seen.clear();
    while (auto f = stream.next()) seen.push_back(f->assignment());
    CHECK(seen == std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}});
}

TEST_CASE("extension stream guard") {
    ExtensionInstance wide = instance(support::indiscrete(22), support::discrete(2), {0}, {0});
    CHECK_THROWS_MATCHES(ExtensionStream(wide), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::size_guard_exceeded;
                         }));
}

TEST_CASE("existence by exhaustion: examples") {
    ExistenceResult gap = topo::brute_force_existence(support::gap_instance(), 1);
    CHECK(gap.exists);
    CHECK(gap.candidates == 3);
    REQUIRE(gap.witness.has_value());
    CHECK(gap.witness->assignment() == std::vector<int>{0, 0, 1});  // canonical-first

    ExistenceResult none =
        topo::brute_force_existence(instance(support::x3(), support::discrete(2), {0, 2}, {0, 1}), 1);
    CHECK_FALSE(none.exists);

    ExistenceResult continuous =
        topo::brute_force_existence(instance(support::x3(), support::sierpinski(), {0, 2}, {0, 1}), 0);
    CHECK(continuous.exists);
    REQUIRE(continuous.witness.has_value());
    CHECK(continuous.witness->assignment() == std::vector<int>{0, 1, 1});
}

TEST_CASE("existence at level 0 implies existence at level 1 on every small instance") {
    support::for_each_instance(3, 3, [](const ExtensionInstance& inst) {
        if (topo::brute_force_existence(inst, 0).exists)
            CHECK(topo::brute_force_existence(inst, 1).exists);
    });
}

TEST_CASE("equivalence sweep counts") {
    VerificationReport tiny = topo::verify_continuity_equivalence(1, 1, 2);
    CHECK(tiny.pass());
    CHECK(tiny.count("maps") == 1);
    CHECK(tiny.count("checks") == 3);

    VerificationReport two = topo::verify_continuity_equivalence(2, 2, 2);
    CHECK(two.pass());
    CHECK(two.count("pairs") == 16);
    CHECK(two.count("maps") == 64);
    CHECK(two.count("checks") == 192);
    CHECK(two.count("discrepancies") == 0);
}

TEST_CASE("equivalence sweep rejects oversized inputs") {
    CHECK_THROWS_AS(topo::verify_continuity_equivalence(5, 2, 1), Error);
    CHECK_THROWS_AS(topo::verify_continuity_equivalence(2, 2, -1), Error);
}

TEST_CASE("extension sweep: trivial and degenerate sizes") {
    VerificationReport one = topo::verify_extension_conditions(1, 1);
    CHECK(one.pass());
    CHECK(one.count("instances") == 1);
    CHECK(one.count("gap") == 0);

    VerificationReport narrow = topo::verify_extension_conditions(2, 1);
    CHECK(narrow.pass());
    CHECK(narrow.count("gap") == 0);
    // Into the one-point target the closure condition always holds.
    CHECK(narrow.count("sufficient") == narrow.count("instances"));
    CHECK(narrow.count("existing") == narrow.count("instances"));
}

TEST_CASE("extension sweep statistics stay consistent") {
    VerificationReport report = topo::verify_extension_conditions(2, 2);
    CHECK(report.pass());
    CHECK(report.count("sufficient") == report.count("sufficient_and_existing"));
    CHECK(report.count("gap") ==
          report.count("existing") - report.count("sufficient_and_existing"));
}

TEST_CASE("regular-target sweep at small sizes") {
    VerificationReport report = topo::verify_regular_extension(2, 2);
    CHECK(report.pass());
    CHECK(report.count("condition_holds") == report.count("continuous_exists"));
}

TEST_CASE("gap mining: empty cases") {
    CHECK(topo::mine_gaps(2, 1).gaps.empty());
    CHECK(topo::mine_gaps(1, 3).gaps.empty());
    CHECK(topo::mine_gaps(2, 2).gaps.empty());
}

TEST_CASE("gap mining finds the bundled instance", "[slow]") {
    topo::MineResult result = topo::mine_gaps(3, 3);
    CHECK(result.report.pass());
    CHECK(result.report.count("gap") == static_cast<long long>(result.gaps.size()));
    CHECK_FALSE(result.gaps.empty());

    bool found_bundled = false;
    ExtensionInstance bundled = support::gap_instance();
    for (const topo::GapResult& gap : result.gaps) {
        if (gap.instance == bundled) found_bundled = true;
        // Every mined gap carries a passing witness and a valid set of
        // theta-mode condition sets.
        CHECK(topo::is_theta_continuous(gap.witness, 1));
        CHECK_FALSE(topo::check_conditions(gap.instance).sufficient_holds);
        CHECK(topo::check_conditions(gap.instance).necessary_holds);
    }
    CHECK(found_bundled);
}

TEST_CASE("reports are identical across worker counts") {
    SweepOptions serial;
    SweepOptions parallel;
    parallel.jobs = 4;

    VerificationReport a = topo::verify_continuity_equivalence(2, 2, 2, serial);
    VerificationReport b = topo::verify_continuity_equivalence(2, 2, 2, parallel);
    CHECK(topo::canonical_text(topo::report_to_json(a)) ==
          topo::canonical_text(topo::report_to_json(b)));

    topo::MineResult ga = topo::mine_gaps(2, 2, serial);
    topo::MineResult gb = topo::mine_gaps(2, 2, parallel);
    CHECK(topo::canonical_text(topo::report_to_json(ga.report, &ga.gaps)) ==
          topo::canonical_text(topo::report_to_json(gb.report, &gb.gaps)));
}

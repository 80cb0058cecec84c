// Runs the three-point sweeps and prints their statistics.

#include <iostream>

#include "topo/topo.hpp"

namespace {

void print(const topo::VerificationReport& report) {
    std::cout << report.check << ":";
    for (const auto& [key, value] : report.counts) std::cout << " " << key << "=" << value;
    std::cout << " -> " << (report.pass() ? "PASS" : "FAIL") << " in " << report.elapsed_seconds
              << " s\n";
}

}  // namespace

int main() {
    topo::SweepOptions options;
    options.jobs = 2;
    print(topo::verify_continuity_equivalence(3, 3, 2, options));
    print(topo::verify_extension_conditions(3, 3, options));
    print(topo::verify_regular_extension(3, 3, options));

    topo::MineResult mined = topo::mine_gaps(3, 3, options);
    print(mined.report);
    std::cout << "gap instances found: " << mined.gaps.size() << "\n";
    return 0;
}

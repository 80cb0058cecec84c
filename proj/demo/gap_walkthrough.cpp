// Walks through the bundled three-point gap instance: the closure condition
// fails at the middle point, yet exhaustion finds a level-1 continuous
// extension that plain continuity rejects.

#include <iostream>

#include "topo/topo.hpp"

int main() {
    using topo::PointSet;

    auto x = topo::make_space(topo::FinSpace::build(3, {{}, {0}, {2}, {0, 2}, {0, 1, 2}}));
    auto y = topo::make_space(topo::FinSpace::build(3, {{}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}));
    PointSet s = PointSet::from_points(3, {0, 2});
    topo::ExtensionInstance inst(x, y, s, topo::PartialMap::from_pairs(x, y, {{0, 0}, {2, 1}}));

    topo::ConditionReport cond = topo::check_conditions(inst);
    std::cout << "closure condition holds: " << (cond.sufficient_holds ? "yes" : "no") << "\n";
    std::cout << "theta condition holds:   " << (cond.necessary_holds ? "yes" : "no") << "\n";
    for (int p = 0; p < 3; ++p)
        std::cout << "  point " << p << ": closure set " << cond.closure_sets[p].to_string()
                  << ", theta set " << cond.theta_sets[p].to_string() << "\n";

    topo::ExistenceResult existence = topo::brute_force_existence(inst, 1);
    std::cout << "level-1 extension exists: " << (existence.exists ? "yes" : "no") << "\n";
    if (existence.witness) {
        const topo::TotalMap& f = *existence.witness;
        std::cout << "  witness assignment:";
        for (int v : f.assignment()) std::cout << " " << v;
        std::cout << "\n  plain continuity: " << (topo::is_continuous(f) ? "yes" : "no") << "\n";
    }
    return 0;
}

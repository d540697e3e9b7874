#pragma once

#include <vector>

#include "a2dcrf/instance.hpp"
#include "a2dcrf/rng.hpp"

namespace a2dcrf::testing {

// Instance with every score set to 1 (zero energy everywhere), ready for
// tests to poke individual tables.
inline Instance uniform_instance(const LabelSpace& space, int num_nodes,
                                 std::vector<InstanceEdge> edges = {}, double theta = 1.0) {
    Instance inst;
    inst.space = space;
    inst.theta_actor = theta;
    inst.theta_action = theta;
    inst.theta_joint = theta;
    NodeScores sc;
    sc.unary_actor.assign(space.num_actors(), 1.0);
    sc.unary_action.assign(space.num_actions(), 1.0);
    sc.unary_joint.assign(space.num_tuples(), 1.0);
    sc.cond_action.assign(space.num_valid(), 1.0);
    sc.cond_actor.assign(space.num_valid(), 1.0);
    inst.nodes.assign(num_nodes, sc);
    inst.edges = std::move(edges);
    return inst;
}

// Random scores in (0,1] everywhere; deterministic in the seed.
inline Instance random_instance(const LabelSpace& space, int num_nodes,
                                std::vector<InstanceEdge> edges, std::uint64_t seed,
                                double theta = 1.0) {
    Instance inst = uniform_instance(space, num_nodes, std::move(edges), theta);
    Rng rng(seed);
    auto fill = [&](std::vector<double>& v) {
        for (double& s : v) s = 0.05 + 0.95 * rng.uniform_real();
    };
    for (auto& sc : inst.nodes) {
        fill(sc.unary_actor);
        fill(sc.unary_action);
        fill(sc.unary_joint);
        fill(sc.cond_action);
        fill(sc.cond_actor);
    }
    return inst;
}

}  // namespace a2dcrf::testing

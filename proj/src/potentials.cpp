#include "a2dcrf/potentials.hpp"

#include <cmath>

namespace a2dcrf {

Energy score_to_energy(double score) { return -std::log(std::max(score, kScoreFloor)); }

double potts_weight(double chi2, double theta, bool same_label) {
    if (same_label) return 1.0;
    return std::exp(-theta / (1.0 + chi2));
}

Energy potts_energy(double chi2, double theta, bool same_label) {
    if (same_label) return 0.0;
    return theta / (1.0 + chi2);
}

Energy conditional_action_link(const NodeScores& node, const LabelSpace& space, int actor, int tuple) {
    if (tuple == space.background_tuple() || space.actor_of(tuple) != actor) return kForbiddenEnergy;
    return score_to_energy(node.cond_action[tuple]);
}

Energy conditional_actor_link(const NodeScores& node, const LabelSpace& space, int action, int tuple) {
    if (tuple == space.background_tuple() || space.action_of(tuple) != action) return kForbiddenEnergy;
    return score_to_energy(node.cond_actor[tuple]);
}

Energy joint_unary(const Instance& inst, int node, int tuple) {
    const LabelSpace& sp = inst.space;
    const NodeScores& sc = inst.nodes[node];
    if (tuple == sp.background_tuple()) {
        return score_to_energy(sc.unary_joint[tuple]);
    }
    const int actor = sp.actor_of(tuple);
    const int action = sp.action_of(tuple);
    return score_to_energy(sc.unary_joint[tuple]) +
           conditional_action_link(sc, sp, actor, tuple) + score_to_energy(sc.unary_actor[actor]) +
           conditional_actor_link(sc, sp, action, tuple) + score_to_energy(sc.unary_action[action]);
}

Energy joint_pairwise(const Instance& inst, int edge, int tuple_i, int tuple_j) {
    const LabelSpace& sp = inst.space;
    const double chi2 = inst.edges[edge].chi2;
    const bool same_actor = sp.actor_of(tuple_i) == sp.actor_of(tuple_j);
    const bool same_action = sp.action_of(tuple_i) == sp.action_of(tuple_j);
    return potts_energy(chi2, inst.theta_actor, same_actor) +
           potts_energy(chi2, inst.theta_action, same_action) +
           potts_energy(chi2, inst.theta_joint, tuple_i == tuple_j);
}

Energy label_cost_energy(double video_score) { return score_to_energy(video_score); }

}  // namespace a2dcrf

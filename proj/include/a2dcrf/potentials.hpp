#pragma once

#include "a2dcrf/instance.hpp"

namespace a2dcrf {

// Energies are -log of probability-domain potentials.
using Energy = double;

// Scores are floored here before the log so energies stay finite.
inline constexpr double kScoreFloor = 1e-6;

// Stand-in for the structurally impossible configurations (the zero branches
// of the conditional link potentials); large enough to never win against any
// feasible labeling, small enough to keep arithmetic total.
inline constexpr Energy kForbiddenEnergy = 1e9;

Energy score_to_energy(double score);

// Contrast-sensitive Potts weight: 1 when the labels agree, otherwise
// exp(-theta / (1 + chi2)). potts_energy is its -log, computed directly.
double potts_weight(double chi2, double theta, bool same_label);
Energy potts_energy(double chi2, double theta, bool same_label);

// Conditional classifier links between a marginal label and a joint tuple.
// Forbidden when the tuple's matching component disagrees with the label.
Energy conditional_action_link(const NodeScores& node, const LabelSpace& space, int actor, int tuple);
Energy conditional_actor_link(const NodeScores& node, const LabelSpace& space, int action, int tuple);

// Collapsed-field unary: joint score plus both conditional links plus both
// marginal scores, all induced by the tuple. The background tuple is scored
// by its joint entry alone.
Energy joint_unary(const Instance& inst, int node, int tuple);

// Collapsed-field pairwise: the applicable Potts layers for the given pair of
// tuples (actor layer, action layer and joint layer, each when its component
// differs). Zero when the tuples agree.
Energy joint_pairwise(const Instance& inst, int edge, int tuple_i, int tuple_j);

// One-time cost charged when a label appears anywhere in the labeling.
Energy label_cost_energy(double video_score);

}  // namespace a2dcrf

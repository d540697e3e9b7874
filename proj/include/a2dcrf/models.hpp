#pragma once

#include <string>
#include <vector>

#include "a2dcrf/energy_model.hpp"
#include "a2dcrf/instance.hpp"
#include "a2dcrf/solve.hpp"

namespace a2dcrf {

enum class ModelKind { nb, jps, cond, bilayer, trilayer };
enum class RecoKind { nb, jps, trilayer };
enum class SolverKind { expansion, swap };

ModelKind model_kind_from_name(const std::string& name);
const char* model_kind_name(ModelKind kind);
RecoKind reco_kind_from_name(const std::string& name);

// Two independent flat CRFs. Each field carries one extra background label
// after the real ones, scored by the node's joint background entry.
struct NaiveBayesModels {
    EnergyModel actor_field;   // labels: actors + background
    EnergyModel action_field;  // labels: actions + background
};

NaiveBayesModels build_naive_bayes(const Instance& inst);

// Single field over valid tuples plus background.
EnergyModel build_joint_product(const Instance& inst);
EnergyModel build_bilayer(const Instance& inst);
EnergyModel build_trilayer(const Instance& inst);

// Action field for the staged conditional model, given inferred per-node
// actor labels (actor-field indices, background included). Actions invalid
// for the inferred actor are infeasible; background actors are pinned to
// "none".
EnergyModel build_conditional_stage2(const Instance& inst, const std::vector<int>& actor_labels);

// Video-level recognition over tuples. Actor/action vectors aggregate node
// unaries by mean; the joint vector prefers explicit videoscores. nb scores
// a tuple by actor x action product, trilayer blends nb and jps by lambda.
std::vector<double> video_recognition(const Instance& inst, RecoKind kind, double lambda = 0.5);

// Wires tuple-level recognition scores into per-label costs (-log score).
void attach_tuple_label_costs(EnergyModel& model, const std::vector<double>& tuple_scores);
// Max-marginalized variants for the two-field models; the background field
// label takes the background tuple's score.
std::vector<double> marginal_actor_costs(const LabelSpace& space, const std::vector<double>& tuple_scores);
std::vector<double> marginal_action_costs(const LabelSpace& space, const std::vector<double>& tuple_scores,
                                          bool with_background_label);

struct SegOptions {
    ModelKind model = ModelKind::trilayer;
    bool label_costs = false;
    double lambda = 0.5;
    SolverKind solver = SolverKind::expansion;
    SolveOptions solve;
};

// A full segmentation run: per-node pair labels plus the per-stage reports
// (two stages for nb and cond, one otherwise).
struct SegmentationRun {
    std::vector<PairLabel> pairs;
    std::vector<SolveReport> stages;
    double energy = 0;  // sum over stages
};

SegmentationRun run_segmentation(const Instance& inst, const SegOptions& opt);

// Pair labels for a tuple-field labeling / the two nb fields. The nb action
// field's background label reads back as "none".
std::vector<PairLabel> pairs_from_tuples(const LabelSpace& space, const std::vector<int>& tuples);
std::vector<PairLabel> pairs_from_fields(const LabelSpace& space, const std::vector<int>& actor_labels,
                                         const std::vector<int>& action_labels);

}  // namespace a2dcrf

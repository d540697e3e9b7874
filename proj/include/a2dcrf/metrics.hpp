#pragma once

#include <array>
#include <vector>

#include "a2dcrf/instance.hpp"

namespace a2dcrf {

// Paints every listed pixel with its node's pair class; pixels not covered by
// any node read as background. Requires frame geometry and pixel masks.
std::vector<FrameGrid> project_labeling(const Instance& inst, const std::vector<PairLabel>& pairs);

// Ground-truth projection: pixels of unlabeled nodes and pixels outside every
// mask stay at the unlabeled sentinel (-1).
std::vector<FrameGrid> project_ground_truth(const Instance& inst);

struct SegAccuracy {
    std::vector<std::pair<int, double>> per_class;  // (class id, accuracy), class id ascending
    double mean = 0;
};

// Average per-class accuracy over the classes present in ground truth;
// unlabeled ground-truth pixels are excluded everywhere.
SegAccuracy per_class_accuracy(const std::vector<FrameGrid>& pred, const std::vector<FrameGrid>& gt);

struct SingleLabelAccuracy {
    double actor = 0;
    double action = 0;
    double tuple = 0;  // both components correct
};

SingleLabelAccuracy single_label_accuracy(const std::vector<PairLabel>& pred,
                                          const std::vector<PairLabel>& gt);

struct ApReport {
    std::vector<std::pair<int, double>> per_class;  // classes with at least one relevant item
    double map = 0;
};

// Retrieval-style evaluation: scores[video][class], relevance[video][class].
// AP averages precision-at-k over the ranks of relevant items under a
// descending stable sort of the scores.
ApReport mean_average_precision(const std::vector<std::vector<double>>& scores,
                                const std::vector<std::vector<int>>& relevance);

// Fraction of track frames whose box contains at least one pixel carrying the
// track's tuple label. Grids are indexed by frame number.
double track_recall(const std::vector<FrameGrid>& pred, const Track& track);

// A track counts as recalled at threshold sigma when R >= sigma, except at
// sigma = 0 where the inequality is strict.
bool track_hit(double recall, double sigma);

// Recall over all tracks at sigma = 0.0, 0.1, ..., 1.0.
std::array<double, 11> recall_curve(const std::vector<FrameGrid>& pred, const TrackSet& tracks);

}  // namespace a2dcrf

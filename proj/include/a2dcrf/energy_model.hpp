#pragma once

#include <cstdint>
#include <vector>

#include "a2dcrf/potentials.hpp"

namespace a2dcrf {

struct ModelEdge {
    int i = 0;
    int j = 0;
};

// A multi-label energy over a node graph: per-node unary tables, a shared
// symmetric label-distance table scaled per edge, optional one-time label
// costs and a per-(node,label) feasibility mask.
//
//   E(L) = sum_i unary(i, L_i)
//        + sum_e edge_scale[e] * smooth[L_i][L_j]
//        + sum_{l used by L} label_cost[l]
struct EnergyModel {
    int num_nodes = 0;
    int num_labels = 0;
    std::vector<ModelEdge> edges;
    std::vector<double> unary;         // num_nodes * num_labels, row-major
    std::vector<std::uint8_t> feasible;  // same shape; empty = all feasible
    std::vector<double> smooth;        // num_labels * num_labels
    std::vector<double> edge_scale;    // per edge, >= 0
    std::vector<double> label_cost;    // empty or per label, >= 0

    double unary_at(int node, int label) const {
        return unary[static_cast<size_t>(node) * num_labels + label];
    }
    bool feasible_at(int node, int label) const {
        return feasible.empty() || feasible[static_cast<size_t>(node) * num_labels + label] != 0;
    }
    double smooth_at(int a, int b) const { return smooth[static_cast<size_t>(a) * num_labels + b]; }
    double pairwise_at(int edge, int a, int b) const { return edge_scale[edge] * smooth_at(a, b); }
    double cost_of(int label) const { return label_cost.empty() ? 0.0 : label_cost[label]; }
    bool has_label_costs() const { return !label_cost.empty(); }

    // Structural checks: shapes, zero diagonal, symmetry, nonnegative values.
    // Throws std::invalid_argument.
    void validate() const;
    // Triangle inequality on the smooth table; exhaustive for small label
    // counts, sampled otherwise. Returns false on the first violation.
    bool smooth_is_metric() const;

    static EnergyModel make(int num_nodes, int num_labels);
};

// Sum of unary, pairwise and used-label costs for a full labeling.
Energy total_energy(const EnergyModel& model, const std::vector<int>& labeling);

}  // namespace a2dcrf

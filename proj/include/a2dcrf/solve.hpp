#pragma once

#include <cstdint>
#include <vector>

#include "a2dcrf/energy_model.hpp"

namespace a2dcrf {

struct SolveOptions {
    int max_sweeps = 10;
    bool randomize_order = false;  // label visit order; ascending when false
    std::uint64_t seed = 0;
};

struct SolveReport {
    std::vector<int> labeling;
    double energy = 0;
    std::vector<double> energy_trace;  // initial energy, then after each accepted move
    int sweeps = 0;
    int accepted_moves = 0;
    double wall_ms = 0;
};

// Move-making minimization. Expansion requires the smooth table to be a
// metric (checked up front); swap only needs the validated semi-metric.
// Both handle label costs exactly inside each move through auxiliary nodes.
SolveReport alpha_expansion(const EnergyModel& model, const SolveOptions& options = {});
SolveReport alpha_beta_swap(const EnergyModel& model, const SolveOptions& options = {});

struct OracleResult {
    std::vector<int> labeling;
    double energy = 0;
    std::uint64_t evaluations = 0;
};

// Exhaustive global minimum; ties resolve to the lexicographically smallest
// labeling. Throws when the feasible assignment count exceeds max_states.
OracleResult brute_force(const EnergyModel& model, std::uint64_t max_states = 10'000'000);

}  // namespace a2dcrf

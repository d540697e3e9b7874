#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "a2dcrf/rng.hpp"
#include "a2dcrf/solve.hpp"

using namespace a2dcrf;

namespace {

// Random Potts model on a small lattice: random unaries, random per-edge
// weights, optional random label costs.
EnergyModel random_potts(Rng& rng, int width, int height, int labels, bool with_costs) {
    EnergyModel m = EnergyModel::make(width * height, labels);
    for (double& u : m.unary) u = 3.0 * rng.uniform_real();
    for (int a = 0; a < labels; ++a) {
        for (int b = 0; b < labels; ++b) {
            m.smooth[static_cast<size_t>(a) * labels + b] = a == b ? 0.0 : 1.0;
        }
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int i = y * width + x;
            if (x + 1 < width) {
                m.edges.push_back({i, i + 1});
                m.edge_scale.push_back(2.0 * rng.uniform_real());
            }
            if (y + 1 < height) {
                m.edges.push_back({i, i + width});
                m.edge_scale.push_back(2.0 * rng.uniform_real());
            }
        }
    }
    if (with_costs) {
        m.label_cost.resize(labels);
        for (double& c : m.label_cost) c = 2.0 * rng.uniform_real();
    }
    return m;
}

}  // namespace

TEST_CASE("total energy sums unary, pairwise and used label costs") {
    EnergyModel m = EnergyModel::make(2, 2);
    m.smooth = {0.0, 0.6931471805599453, 0.6931471805599453, 0.0};
    m.edges.push_back({0, 1});
    m.edge_scale.push_back(1.0);

    CHECK(total_energy(m, {0, 0}) == 0.0);
    CHECK(total_energy(m, {0, 1}) == doctest::Approx(0.6931471805599453).epsilon(1e-12));

    m.label_cost = {0.5, 0.0};
    CHECK(total_energy(m, {1, 1}) == 0.0);                                     // label 0 unused
    CHECK(total_energy(m, {0, 0}) == doctest::Approx(0.5).epsilon(1e-12));     // used once
    CHECK(total_energy(m, {0, 1}) == doctest::Approx(0.5 + 0.6931471805599453).epsilon(1e-12));
}

TEST_CASE("brute force minimizes a single node") {
    EnergyModel m = EnergyModel::make(1, 3);
    m.unary = {2.0, 0.5, 1.0};
    m.label_cost = {0.0, 1.0, 0.0};
    OracleResult r = brute_force(m);
    // unary + cost: 2.0, 1.5, 1.0 -> label 2.
    CHECK(r.labeling == std::vector<int>{2});
    CHECK(r.energy == doctest::Approx(1.0));
    CHECK(r.evaluations == 3);
}

TEST_CASE("brute force enumerates the full feasible product") {
    Rng rng(3);
    EnergyModel m = random_potts(rng, 4, 2, 3, false);
    OracleResult r = brute_force(m);
    CHECK(r.evaluations == 6561);  // 3^8
    CHECK_THROWS_AS(brute_force(m, 6000), std::invalid_argument);
}

TEST_CASE("brute force breaks ties lexicographically") {
    EnergyModel m = EnergyModel::make(2, 2);  // all energies zero
    OracleResult r = brute_force(m);
    CHECK(r.labeling == std::vector<int>{0, 0});
}

TEST_CASE("expansion and swap are exact on binary instances") {
    Rng rng(1001);
    for (int round = 0; round < 60; ++round) {
        int w = 2 + rng.uniform_int(3);
        int h = 1 + rng.uniform_int(3);
        EnergyModel m = random_potts(rng, w, h, 2, false);
        OracleResult oracle = brute_force(m);
        SolveReport ex = alpha_expansion(m);
        SolveReport sw = alpha_beta_swap(m);
        CHECK(ex.energy == doctest::Approx(oracle.energy).epsilon(1e-9));
        CHECK(sw.energy == doctest::Approx(oracle.energy).epsilon(1e-9));
        CHECK(total_energy(m, ex.labeling) == doctest::Approx(ex.energy).epsilon(1e-9));
    }
}

TEST_CASE("multi-label moves stay within the Potts bound and report honestly") {
    Rng rng(1002);
    for (int round = 0; round < 40; ++round) {
        bool with_costs = round % 2 == 1;
        EnergyModel m = random_potts(rng, 2 + rng.uniform_int(3), 2, 2 + rng.uniform_int(3), with_costs);
        OracleResult oracle = brute_force(m);
        for (auto* report : {&alpha_expansion, &alpha_beta_swap}) {
            SolveReport r = (*report)(m, {});
            CHECK(r.energy >= oracle.energy - 1e-9);
            CHECK(r.energy <= 2.0 * oracle.energy + 1e-9);
            CHECK(total_energy(m, r.labeling) == doctest::Approx(r.energy).epsilon(1e-6));
        }
    }
}

TEST_CASE("a strict unary optimum is found in the first sweep") {
    EnergyModel m = EnergyModel::make(4, 3);
    for (int i = 0; i < 4; ++i) {
        for (int l = 0; l < 3; ++l) {
            m.unary[static_cast<size_t>(i) * 3 + l] = l == i % 3 ? 0.0 : 1.0;
        }
    }
    SolveReport r = alpha_expansion(m);
    CHECK(r.labeling == std::vector<int>{0, 1, 2, 0});
    CHECK(r.energy == 0.0);
    CHECK(r.accepted_moves == 0);  // initialization already optimal
    CHECK(r.sweeps == 1);
}

TEST_CASE("energy trace never increases and accepted moves strictly decrease it") {
    Rng rng(1003);
    EnergyModel m = random_potts(rng, 4, 4, 4, true);
    SolveReport r = alpha_expansion(m);
    REQUIRE(!r.energy_trace.empty());
    for (size_t k = 1; k < r.energy_trace.size(); ++k) {
        CHECK(r.energy_trace[k] < r.energy_trace[k - 1]);
    }
    CHECK(r.energy_trace.back() == doctest::Approx(r.energy));
}

TEST_CASE("label costs can evacuate a label entirely") {
    // Two nodes prefer label 0 by a hair, but label 0 carries a heavy cost.
    EnergyModel m = EnergyModel::make(2, 2);
    m.unary = {0.0, 0.1, 0.0, 0.1};
    m.label_cost = {1.0, 0.0};
    OracleResult oracle = brute_force(m);
    CHECK(oracle.labeling == std::vector<int>{1, 1});
    SolveReport r = alpha_expansion(m);
    CHECK(r.energy == doctest::Approx(oracle.energy).epsilon(1e-12));
    CHECK(r.labeling == oracle.labeling);
}

TEST_CASE("tiny label-cost instances match the oracle") {
    Rng rng(1004);
    for (int round = 0; round < 30; ++round) {
        EnergyModel m = random_potts(rng, 2, 2, 3, true);
        OracleResult oracle = brute_force(m);
        SolveReport ex = alpha_expansion(m);
        SolveReport sw = alpha_beta_swap(m);
        CHECK(ex.energy == doctest::Approx(oracle.energy).epsilon(1e-9));
        CHECK(sw.energy == doctest::Approx(oracle.energy).epsilon(1e-9));
    }
}

TEST_CASE("solvers are deterministic") {
    Rng rng(1005);
    EnergyModel m = random_potts(rng, 4, 3, 4, true);
    SolveReport a = alpha_expansion(m);
    SolveReport b = alpha_expansion(m);
    CHECK(a.labeling == b.labeling);
    CHECK(a.energy == b.energy);
    CHECK(a.energy_trace == b.energy_trace);
}

TEST_CASE("infeasible nodes are rejected") {
    EnergyModel m = EnergyModel::make(2, 2);
    m.feasible.assign(4, 1);
    m.feasible[2] = 0;
    m.feasible[3] = 0;  // node 1 has no feasible label
    CHECK_THROWS_AS(alpha_expansion(m), std::invalid_argument);
    CHECK_THROWS_AS(brute_force(m), std::invalid_argument);
}

TEST_CASE("feasibility masks confine every solver") {
    Rng rng(1006);
    for (int round = 0; round < 20; ++round) {
        EnergyModel m = random_potts(rng, 3, 2, 3, round % 2 == 1);
        m.feasible.assign(m.unary.size(), 1);
        for (int i = 0; i < m.num_nodes; ++i) {
            m.feasible[static_cast<size_t>(i) * 3 + i % 3] = 0;  // forbid one label per node
        }
        OracleResult oracle = brute_force(m);
        for (int i = 0; i < m.num_nodes; ++i) CHECK(oracle.labeling[i] != i % 3);
        SolveReport ex = alpha_expansion(m);
        SolveReport sw = alpha_beta_swap(m);
        for (int i = 0; i < m.num_nodes; ++i) {
            CHECK(ex.labeling[i] != i % 3);
            CHECK(sw.labeling[i] != i % 3);
        }
        CHECK(ex.energy >= oracle.energy - 1e-9);
        CHECK(sw.energy >= oracle.energy - 1e-9);
    }
}

TEST_CASE("expansion rejects non-metric pairwise terms, swap accepts semi-metrics") {
    EnergyModel m = EnergyModel::make(2, 3);
    // Semi-metric but not a metric: d(0,2) > d(0,1) + d(1,2).
    m.smooth = {0.0, 0.1, 1.0,
                0.1, 0.0, 0.1,
                1.0, 0.1, 0.0};
    m.edges.push_back({0, 1});
    m.edge_scale.push_back(1.0);
    CHECK_THROWS_AS(alpha_expansion(m), std::invalid_argument);
    CHECK_NOTHROW(alpha_beta_swap(m));
}

#include "a2dcrf/energy_model.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace a2dcrf {

EnergyModel EnergyModel::make(int num_nodes, int num_labels) {
    EnergyModel m;
    m.num_nodes = num_nodes;
    m.num_labels = num_labels;
    m.unary.assign(static_cast<size_t>(num_nodes) * num_labels, 0.0);
    m.smooth.assign(static_cast<size_t>(num_labels) * num_labels, 0.0);
    return m;
}

void EnergyModel::validate() const {
    if (num_nodes <= 0 || num_labels <= 0) throw std::invalid_argument("empty model");
    if (unary.size() != static_cast<size_t>(num_nodes) * num_labels) {
        throw std::invalid_argument("unary table size mismatch");
    }
    if (!feasible.empty() && feasible.size() != unary.size()) {
        throw std::invalid_argument("feasibility mask size mismatch");
    }
    if (smooth.size() != static_cast<size_t>(num_labels) * num_labels) {
        throw std::invalid_argument("smooth table size mismatch");
    }
    if (edge_scale.size() != edges.size()) throw std::invalid_argument("edge scale size mismatch");
    for (const auto& e : edges) {
        if (e.i < 0 || e.j < 0 || e.i >= num_nodes || e.j >= num_nodes || e.i == e.j) {
            throw std::invalid_argument("edge endpoints out of range");
        }
    }
    for (double s : edge_scale) {
        if (!(s >= 0) || !std::isfinite(s)) throw std::invalid_argument("edge scale must be nonnegative");
    }
    for (int a = 0; a < num_labels; ++a) {
        if (smooth_at(a, a) != 0.0) throw std::invalid_argument("smooth diagonal must be zero");
        for (int b = 0; b < num_labels; ++b) {
            double v = smooth_at(a, b);
            if (!(v >= 0) || !std::isfinite(v)) {
                throw std::invalid_argument("smooth values must be nonnegative");
            }
            if (std::abs(v - smooth_at(b, a)) > 1e-12) {
                throw std::invalid_argument("smooth table must be symmetric");
            }
        }
    }
    if (!label_cost.empty()) {
        if (label_cost.size() != static_cast<size_t>(num_labels)) {
            throw std::invalid_argument("label cost size mismatch");
        }
        for (double c : label_cost) {
            if (!(c >= 0) || !std::isfinite(c)) throw std::invalid_argument("label costs must be nonnegative");
        }
    }
    for (double u : unary) {
        if (!std::isfinite(u)) throw std::invalid_argument("unary values must be finite");
    }
}

bool EnergyModel::smooth_is_metric() const {
    const int L = num_labels;
    auto violates = [&](int a, int b, int c) {
        return smooth_at(a, c) > smooth_at(a, b) + smooth_at(b, c) + 1e-9;
    };
    if (static_cast<std::uint64_t>(L) * L * L <= 1'000'000) {
        for (int a = 0; a < L; ++a) {
            for (int b = 0; b < L; ++b) {
                for (int c = 0; c < L; ++c) {
                    if (violates(a, b, c)) return false;
                }
            }
        }
        return true;
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&] {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int k = 0; k < 200'000; ++k) {
        int a = static_cast<int>(next() % L);
        int b = static_cast<int>(next() % L);
        int c = static_cast<int>(next() % L);
        if (violates(a, b, c)) return false;
    }
    return true;
}

Energy total_energy(const EnergyModel& model, const std::vector<int>& labeling) {
    if (static_cast<int>(labeling.size()) != model.num_nodes) {
        throw std::invalid_argument("labeling size mismatch");
    }
    Energy e = 0;
    for (int i = 0; i < model.num_nodes; ++i) e += model.unary_at(i, labeling[i]);
    for (size_t k = 0; k < model.edges.size(); ++k) {
        e += model.pairwise_at(static_cast<int>(k), labeling[model.edges[k].i], labeling[model.edges[k].j]);
    }
    if (model.has_label_costs()) {
        std::vector<std::uint8_t> used(model.num_labels, 0);
        for (int l : labeling) used[l] = 1;
        for (int l = 0; l < model.num_labels; ++l) {
            if (used[l]) e += model.label_cost[l];
        }
    }
    return e;
}

}  // namespace a2dcrf

#include "a2dcrf/solve.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <string>

#include "a2dcrf/maxflow.hpp"

namespace a2dcrf {

namespace {

constexpr double kInfCap = 1e15;
constexpr double kAcceptEps = 1e-12;

std::vector<int> initial_labeling(const EnergyModel& m) {
    std::vector<int> lab(m.num_nodes);
    for (int i = 0; i < m.num_nodes; ++i) {
        int best = -1;
        double best_u = 0;
        for (int l = 0; l < m.num_labels; ++l) {
            if (!m.feasible_at(i, l)) continue;
            double u = m.unary_at(i, l);
            if (best < 0 || u < best_u) {
                best = l;
                best_u = u;
            }
        }
        if (best < 0) {
            throw std::invalid_argument("infeasible instance: node " + std::to_string(i) +
                                        " has no feasible label");
        }
        lab[i] = best;
    }
    return lab;
}

struct MoveState {
    std::vector<int> labeling;
    std::vector<int> label_count;
    double energy = 0;
};

// One alpha-expansion move, exact via a single min cut. Source side keeps the
// current label, sink side takes alpha. Label costs enter through auxiliary
// nodes: one per fully-movable present label (paid unless evacuated) and one
// for alpha when it is absent (paid as soon as any node adopts it).
bool expansion_move(const EnergyModel& m, int alpha, MoveState& st) {
    const int n = m.num_nodes;
    std::vector<int> gid(n, -1);
    std::vector<int> movers;
    movers.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (st.labeling[i] != alpha && m.feasible_at(i, alpha)) {
            gid[i] = static_cast<int>(movers.size());
            movers.push_back(i);
        }
    }
    if (movers.empty()) return false;

    FlowNetwork net(static_cast<int>(movers.size()) + m.num_labels,
                    static_cast<int>(m.edges.size()) + n);
    net.add_nodes(static_cast<int>(movers.size()));

    std::vector<double> delta(movers.size());  // cost(take alpha) - cost(keep)
    for (size_t k = 0; k < movers.size(); ++k) {
        int i = movers[k];
        delta[k] = m.unary_at(i, alpha) - m.unary_at(i, st.labeling[i]);
    }
    for (size_t e = 0; e < m.edges.size(); ++e) {
        const int i = m.edges[e].i, j = m.edges[e].j;
        const int gi = gid[i], gj = gid[j];
        if (gi < 0 && gj < 0) continue;
        const double scale = m.edge_scale[e];
        if (scale == 0) continue;
        const int fi = st.labeling[i], fj = st.labeling[j];
        if (gi >= 0 && gj >= 0) {
            const double a = scale * m.smooth_at(fi, fj);
            const double b = scale * m.smooth_at(fi, alpha);
            const double c = scale * m.smooth_at(alpha, fj);
            double w = b + c - a;
            if (w < -1e-9) {
                throw std::invalid_argument("expansion move hit a non-submodular pairwise term");
            }
            delta[gi] += c - a;
            delta[gj] += -c;
            if (w > 0) net.add_edge(gi, gj, w, 0.0);
        } else if (gi >= 0) {
            delta[gi] += scale * (m.smooth_at(alpha, fj) - m.smooth_at(fi, fj));
        } else {
            delta[gj] += scale * (m.smooth_at(fi, alpha) - m.smooth_at(fi, fj));
        }
    }
    for (size_t k = 0; k < movers.size(); ++k) {
        if (delta[k] >= 0) {
            net.add_tweights(static_cast<int>(k), delta[k], 0.0);
        } else {
            net.add_tweights(static_cast<int>(k), 0.0, -delta[k]);
        }
    }

    if (m.has_label_costs()) {
        std::vector<int> movable_count(m.num_labels, 0);
        for (int i : movers) ++movable_count[st.labeling[i]];
        std::vector<int> aux_of(m.num_labels, -1);
        for (int l = 0; l < m.num_labels; ++l) {
            if (l == alpha || m.cost_of(l) <= 0 || st.label_count[l] == 0) continue;
            if (movable_count[l] != st.label_count[l]) continue;  // cannot be evacuated
            aux_of[l] = net.add_nodes(1);
            net.add_tweights(aux_of[l], 0.0, m.cost_of(l));
        }
        bool any_aux = false;
        for (int l = 0; l < m.num_labels; ++l) any_aux = any_aux || aux_of[l] >= 0;
        if (any_aux) {
            for (size_t k = 0; k < movers.size(); ++k) {
                int aux = aux_of[st.labeling[movers[k]]];
                if (aux >= 0) net.add_edge(static_cast<int>(k), aux, kInfCap, 0.0);
            }
        }
        if (st.label_count[alpha] == 0 && m.cost_of(alpha) > 0) {
            int aux = net.add_nodes(1);
            net.add_tweights(aux, m.cost_of(alpha), 0.0);
            for (size_t k = 0; k < movers.size(); ++k) {
                net.add_edge(aux, static_cast<int>(k), kInfCap, 0.0);
            }
        }
    }

    net.max_flow();

    std::vector<int> cand = st.labeling;
    bool changed = false;
    for (size_t k = 0; k < movers.size(); ++k) {
        if (net.side(static_cast<int>(k)) == FlowNetwork::Side::sink) {
            cand[movers[k]] = alpha;
            changed = true;
        }
    }
    if (!changed) return false;
    double cand_energy = total_energy(m, cand);
    if (!(cand_energy < st.energy - kAcceptEps)) return false;
    for (int i = 0; i < n; ++i) {
        if (cand[i] != st.labeling[i]) {
            --st.label_count[st.labeling[i]];
            ++st.label_count[cand[i]];
        }
    }
    st.labeling = std::move(cand);
    st.energy = cand_energy;
    return true;
}

// One alpha-beta swap move: source side takes alpha, sink side takes beta.
// Participants are the nodes currently carrying either label; a participant
// whose opposite label is infeasible stays put and pins its label's cost.
bool swap_move(const EnergyModel& m, int alpha, int beta, MoveState& st) {
    const int n = m.num_nodes;
    std::vector<int> gid(n, -1);
    std::vector<int> movers;
    bool pinned_alpha = false, pinned_beta = false;
    for (int i = 0; i < n; ++i) {
        if (st.labeling[i] == alpha) {
            if (m.feasible_at(i, beta)) {
                gid[i] = static_cast<int>(movers.size());
                movers.push_back(i);
            } else {
                pinned_alpha = true;
            }
        } else if (st.labeling[i] == beta) {
            if (m.feasible_at(i, alpha)) {
                gid[i] = static_cast<int>(movers.size());
                movers.push_back(i);
            } else {
                pinned_beta = true;
            }
        }
    }
    if (movers.empty()) return false;

    FlowNetwork net(static_cast<int>(movers.size()) + 2, static_cast<int>(m.edges.size()) + n);
    net.add_nodes(static_cast<int>(movers.size()));

    std::vector<double> delta(movers.size());  // cost(beta) - cost(alpha)
    for (size_t k = 0; k < movers.size(); ++k) {
        int i = movers[k];
        delta[k] = m.unary_at(i, beta) - m.unary_at(i, alpha);
    }
    for (size_t e = 0; e < m.edges.size(); ++e) {
        const int i = m.edges[e].i, j = m.edges[e].j;
        const int gi = gid[i], gj = gid[j];
        if (gi < 0 && gj < 0) continue;
        const double scale = m.edge_scale[e];
        if (scale == 0) continue;
        if (gi >= 0 && gj >= 0) {
            const double b = scale * m.smooth_at(alpha, beta);
            const double c = scale * m.smooth_at(beta, alpha);
            delta[gi] += c;
            delta[gj] += -c;
            if (b + c > 0) net.add_edge(gi, gj, b + c, 0.0);
        } else if (gi >= 0) {
            const int fj = st.labeling[j];
            delta[gi] += scale * (m.smooth_at(beta, fj) - m.smooth_at(alpha, fj));
        } else {
            const int fi = st.labeling[i];
            delta[gj] += scale * (m.smooth_at(fi, beta) - m.smooth_at(fi, alpha));
        }
    }
    for (size_t k = 0; k < movers.size(); ++k) {
        if (delta[k] >= 0) {
            net.add_tweights(static_cast<int>(k), delta[k], 0.0);
        } else {
            net.add_tweights(static_cast<int>(k), 0.0, -delta[k]);
        }
    }

    if (m.has_label_costs()) {
        if (m.cost_of(alpha) > 0 && !pinned_alpha) {
            int aux = net.add_nodes(1);
            net.add_tweights(aux, 0.0, m.cost_of(alpha));  // paid while any node stays alpha
            for (size_t k = 0; k < movers.size(); ++k) {
                net.add_edge(static_cast<int>(k), aux, kInfCap, 0.0);
            }
        }
        if (m.cost_of(beta) > 0 && !pinned_beta) {
            int aux = net.add_nodes(1);
            net.add_tweights(aux, m.cost_of(beta), 0.0);  // paid while any node takes beta
            for (size_t k = 0; k < movers.size(); ++k) {
                net.add_edge(aux, static_cast<int>(k), kInfCap, 0.0);
            }
        }
    }

    net.max_flow();

    std::vector<int> cand = st.labeling;
    bool changed = false;
    for (size_t k = 0; k < movers.size(); ++k) {
        int want = net.side(static_cast<int>(k)) == FlowNetwork::Side::source ? alpha : beta;
        if (cand[movers[k]] != want) {
            cand[movers[k]] = want;
            changed = true;
        }
    }
    if (!changed) return false;
    double cand_energy = total_energy(m, cand);
    if (!(cand_energy < st.energy - kAcceptEps)) return false;
    for (int i = 0; i < n; ++i) {
        if (cand[i] != st.labeling[i]) {
            --st.label_count[st.labeling[i]];
            ++st.label_count[cand[i]];
        }
    }
    st.labeling = std::move(cand);
    st.energy = cand_energy;
    return true;
}

// Evacuation move for a costed label: every node carrying it picks its best
// other label, refined by a few ICM passes so neighbors settle jointly. This
// cancels the label's one-time cost even when the displaced nodes want to
// scatter over several labels, which no single expansion or swap can do.
bool evacuation_move(const EnergyModel& m, int label, MoveState& st,
                     const std::vector<std::vector<std::pair<int, int>>>& incident) {
    if (m.cost_of(label) <= 0 || st.label_count[label] == 0) return false;
    std::vector<int> movers;
    for (int i = 0; i < m.num_nodes; ++i) {
        if (st.labeling[i] == label) movers.push_back(i);
    }
    std::vector<int> cand = st.labeling;
    auto best_other = [&](int i) {
        int best = -1;
        double best_e = 0;
        for (int l = 0; l < m.num_labels; ++l) {
            if (l == label || !m.feasible_at(i, l)) continue;
            double e = m.unary_at(i, l);
            for (const auto& [edge, other] : incident[i]) {
                e += m.pairwise_at(edge, l, cand[other]);
            }
            if (best < 0 || e < best_e) {
                best = l;
                best_e = e;
            }
        }
        return best;
    };
    for (int i : movers) {
        int l = best_other(i);
        if (l < 0) return false;  // label pinned somewhere, cost stays
        cand[i] = l;
    }
    for (int pass = 0; pass < 4; ++pass) {
        bool changed = false;
        for (int i : movers) {
            int l = best_other(i);
            if (l != cand[i]) {
                cand[i] = l;
                changed = true;
            }
        }
        if (!changed) break;
    }
    double cand_energy = total_energy(m, cand);
    if (!(cand_energy < st.energy - kAcceptEps)) return false;
    for (int i : movers) {
        --st.label_count[label];
        ++st.label_count[cand[i]];
    }
    st.labeling = std::move(cand);
    st.energy = cand_energy;
    return true;
}

SolveReport run_moves(const EnergyModel& m, const SolveOptions& opt, bool expansion) {
    m.validate();
    if (opt.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
    if (expansion && !m.smooth_is_metric()) {
        throw std::invalid_argument("pairwise term violates the triangle inequality; "
                                    "alpha-expansion requires a metric");
    }
    const auto t0 = std::chrono::steady_clock::now();

    MoveState st;
    st.labeling = initial_labeling(m);
    st.label_count.assign(m.num_labels, 0);
    for (int l : st.labeling) ++st.label_count[l];
    st.energy = total_energy(m, st.labeling);

    SolveReport report;
    report.energy_trace.push_back(st.energy);

    std::mt19937_64 rng(opt.seed);
    std::vector<int> order(m.num_labels);
    for (int l = 0; l < m.num_labels; ++l) order[l] = l;

    std::vector<std::vector<std::pair<int, int>>> incident;
    if (m.has_label_costs()) {
        incident.resize(m.num_nodes);
        for (size_t e = 0; e < m.edges.size(); ++e) {
            incident[m.edges[e].i].emplace_back(static_cast<int>(e), m.edges[e].j);
            incident[m.edges[e].j].emplace_back(static_cast<int>(e), m.edges[e].i);
        }
    }

    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        ++report.sweeps;
        int accepted = 0;
        if (opt.randomize_order) std::shuffle(order.begin(), order.end(), rng);
        if (expansion) {
            for (int alpha : order) {
                if (expansion_move(m, alpha, st)) {
                    ++accepted;
                    report.energy_trace.push_back(st.energy);
                }
            }
        } else {
            for (size_t ai = 0; ai < order.size(); ++ai) {
                for (size_t bi = ai + 1; bi < order.size(); ++bi) {
                    if (swap_move(m, order[ai], order[bi], st)) {
                        ++accepted;
                        report.energy_trace.push_back(st.energy);
                    }
                }
            }
        }
        if (m.has_label_costs()) {
            for (int label : order) {
                if (evacuation_move(m, label, st, incident)) {
                    ++accepted;
                    report.energy_trace.push_back(st.energy);
                }
            }
        }
        report.accepted_moves += accepted;
        if (accepted == 0) break;
    }

    report.labeling = std::move(st.labeling);
    report.energy = st.energy;
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace

SolveReport alpha_expansion(const EnergyModel& model, const SolveOptions& options) {
    return run_moves(model, options, true);
}

SolveReport alpha_beta_swap(const EnergyModel& model, const SolveOptions& options) {
    return run_moves(model, options, false);
}

OracleResult brute_force(const EnergyModel& model, std::uint64_t max_states) {
    model.validate();
    const int n = model.num_nodes;
    std::vector<std::vector<int>> options(n);
    double states = 1;
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < model.num_labels; ++l) {
            if (model.feasible_at(i, l)) options[i].push_back(l);
        }
        if (options[i].empty()) {
            throw std::invalid_argument("infeasible instance: node " + std::to_string(i) +
                                        " has no feasible label");
        }
        states *= static_cast<double>(options[i].size());
        if (states > static_cast<double>(max_states)) {
            throw std::invalid_argument("search space exceeds the brute-force bound of " +
                                        std::to_string(max_states) + " states");
        }
    }

    std::vector<int> idx(n, 0);
    std::vector<int> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = options[i][0];

    OracleResult best;
    best.labeling = lab;
    best.energy = total_energy(model, lab);
    best.evaluations = 1;

    // Lexicographic enumeration, last node least significant; the first
    // minimum seen is therefore the lexicographically smallest one.
    while (true) {
        int pos = n - 1;
        while (pos >= 0 && idx[pos] + 1 == static_cast<int>(options[pos].size())) {
            idx[pos] = 0;
            lab[pos] = options[pos][0];
            --pos;
        }
        if (pos < 0) break;
        ++idx[pos];
        lab[pos] = options[pos][idx[pos]];
        double e = total_energy(model, lab);
        ++best.evaluations;
        if (e < best.energy) {
            best.energy = e;
            best.labeling = lab;
        }
    }
    return best;
}

}  // namespace a2dcrf

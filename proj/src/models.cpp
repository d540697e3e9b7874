#include "a2dcrf/models.hpp"

#include <algorithm>
#include <stdexcept>

namespace a2dcrf {

namespace {

void fill_edges(const Instance& inst, EnergyModel& m) {
    m.edges.reserve(inst.edges.size());
    m.edge_scale.reserve(inst.edges.size());
    for (const auto& e : inst.edges) {
        m.edges.push_back({e.i, e.j});
        m.edge_scale.push_back(1.0 / (1.0 + e.chi2));
    }
}

void set_smooth(EnergyModel& m, int a, int b, double v) {
    m.smooth[static_cast<size_t>(a) * m.num_labels + b] = v;
}

void set_unary(EnergyModel& m, int node, int label, double v) {
    m.unary[static_cast<size_t>(node) * m.num_labels + label] = v;
}

// Potts distance over field labels scaled by theta; the per-edge 1/(1+chi2)
// factor lives in edge_scale.
void potts_smooth(EnergyModel& m, double theta) {
    for (int a = 0; a < m.num_labels; ++a) {
        for (int b = 0; b < m.num_labels; ++b) {
            set_smooth(m, a, b, a == b ? 0.0 : theta);
        }
    }
}

}  // namespace

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "nb") return ModelKind::nb;
    if (name == "jps") return ModelKind::jps;
    if (name == "cond") return ModelKind::cond;
    if (name == "bilayer") return ModelKind::bilayer;
    if (name == "trilayer") return ModelKind::trilayer;
    throw std::invalid_argument("unknown model '" + name + "'");
}

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::nb: return "nb";
        case ModelKind::jps: return "jps";
        case ModelKind::cond: return "cond";
        case ModelKind::bilayer: return "bilayer";
        case ModelKind::trilayer: return "trilayer";
    }
    return "?";
}

RecoKind reco_kind_from_name(const std::string& name) {
    if (name == "nb") return RecoKind::nb;
    if (name == "jps") return RecoKind::jps;
    if (name == "trilayer") return RecoKind::trilayer;
    throw std::invalid_argument("unknown recognition model '" + name + "'");
}

NaiveBayesModels build_naive_bayes(const Instance& inst) {
    const LabelSpace& sp = inst.space;
    const int bg = sp.background_tuple();
    NaiveBayesModels nb;

    nb.actor_field = EnergyModel::make(inst.num_nodes(), sp.num_actors() + 1);
    for (int i = 0; i < inst.num_nodes(); ++i) {
        for (int a = 0; a < sp.num_actors(); ++a) {
            set_unary(nb.actor_field, i, a, score_to_energy(inst.nodes[i].unary_actor[a]));
        }
        set_unary(nb.actor_field, i, sp.num_actors(), score_to_energy(inst.nodes[i].unary_joint[bg]));
    }
    potts_smooth(nb.actor_field, inst.theta_actor);
    fill_edges(inst, nb.actor_field);

    nb.action_field = EnergyModel::make(inst.num_nodes(), sp.num_actions() + 1);
    for (int i = 0; i < inst.num_nodes(); ++i) {
        for (int y = 0; y < sp.num_actions(); ++y) {
            set_unary(nb.action_field, i, y, score_to_energy(inst.nodes[i].unary_action[y]));
        }
        set_unary(nb.action_field, i, sp.num_actions(), score_to_energy(inst.nodes[i].unary_joint[bg]));
    }
    potts_smooth(nb.action_field, inst.theta_action);
    fill_edges(inst, nb.action_field);
    return nb;
}

EnergyModel build_joint_product(const Instance& inst) {
    const LabelSpace& sp = inst.space;
    EnergyModel m = EnergyModel::make(inst.num_nodes(), sp.num_tuples());
    for (int i = 0; i < inst.num_nodes(); ++i) {
        for (int t = 0; t < sp.num_tuples(); ++t) {
            set_unary(m, i, t, score_to_energy(inst.nodes[i].unary_joint[t]));
        }
    }
    potts_smooth(m, inst.theta_joint);
    fill_edges(inst, m);
    return m;
}

EnergyModel build_bilayer(const Instance& inst) {
    const LabelSpace& sp = inst.space;
    EnergyModel m = EnergyModel::make(inst.num_nodes(), sp.num_tuples());
    for (int i = 0; i < inst.num_nodes(); ++i) {
        const NodeScores& sc = inst.nodes[i];
        for (int t = 0; t < sp.num_tuples(); ++t) {
            if (t == sp.background_tuple()) {
                set_unary(m, i, t, score_to_energy(sc.unary_joint[t]));
            } else {
                set_unary(m, i, t,
                          score_to_energy(sc.unary_actor[sp.actor_of(t)]) +
                              score_to_energy(sc.unary_action[sp.action_of(t)]) +
                              score_to_energy(sc.unary_joint[t]));
            }
        }
    }
    // Actor and action Potts layers only; no joint layer in the bilayer model.
    for (int s = 0; s < sp.num_tuples(); ++s) {
        for (int t = 0; t < sp.num_tuples(); ++t) {
            double v = 0;
            if (sp.actor_of(s) != sp.actor_of(t)) v += inst.theta_actor;
            if (sp.action_of(s) != sp.action_of(t)) v += inst.theta_action;
            set_smooth(m, s, t, v);
        }
    }
    fill_edges(inst, m);
    return m;
}

EnergyModel build_trilayer(const Instance& inst) {
    const LabelSpace& sp = inst.space;
    EnergyModel m = EnergyModel::make(inst.num_nodes(), sp.num_tuples());
    for (int i = 0; i < inst.num_nodes(); ++i) {
        for (int t = 0; t < sp.num_tuples(); ++t) {
            set_unary(m, i, t, joint_unary(inst, i, t));
        }
    }
    for (int s = 0; s < sp.num_tuples(); ++s) {
        for (int t = 0; t < sp.num_tuples(); ++t) {
            double v = 0;
            if (sp.actor_of(s) != sp.actor_of(t)) v += inst.theta_actor;
            if (sp.action_of(s) != sp.action_of(t)) v += inst.theta_action;
            if (s != t) v += inst.theta_joint;
            set_smooth(m, s, t, v);
        }
    }
    fill_edges(inst, m);
    return m;
}

EnergyModel build_conditional_stage2(const Instance& inst, const std::vector<int>& actor_labels) {
    const LabelSpace& sp = inst.space;
    if (static_cast<int>(actor_labels.size()) != inst.num_nodes()) {
        throw std::invalid_argument("actor label count mismatch");
    }
    EnergyModel m = EnergyModel::make(inst.num_nodes(), sp.num_actions());
    m.feasible.assign(m.unary.size(), 0);
    for (int i = 0; i < inst.num_nodes(); ++i) {
        const int actor = actor_labels[i];
        for (int y = 0; y < sp.num_actions(); ++y) {
            const size_t slot = static_cast<size_t>(i) * m.num_labels + y;
            if (actor == sp.background_actor()) {
                if (y == sp.none_action()) {
                    m.feasible[slot] = 1;
                    m.unary[slot] = 0.0;
                } else {
                    m.unary[slot] = kForbiddenEnergy;
                }
            } else if (sp.is_valid_tuple(actor, y)) {
                m.feasible[slot] = 1;
                m.unary[slot] = score_to_energy(inst.nodes[i].cond_action[sp.tuple_index(actor, y)]);
            } else {
                m.unary[slot] = kForbiddenEnergy;
            }
        }
    }
    potts_smooth(m, inst.theta_action);
    fill_edges(inst, m);
    return m;
}

std::vector<double> video_recognition(const Instance& inst, RecoKind kind, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in [0,1]");
    }
    const LabelSpace& sp = inst.space;
    const int n = inst.num_nodes();
    const int nt = sp.num_tuples();

    std::vector<double> joint(nt, 0.0);
    if (inst.has_video_scores()) {
        joint = inst.video_scores;
    } else {
        for (int i = 0; i < n; ++i) {
            for (int t = 0; t < nt; ++t) joint[t] += inst.nodes[i].unary_joint[t];
        }
        for (double& v : joint) v /= n;
    }
    if (kind == RecoKind::jps) return joint;

    std::vector<double> actor(sp.num_actors(), 0.0), action(sp.num_actions(), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < sp.num_actors(); ++a) actor[a] += inst.nodes[i].unary_actor[a];
        for (int y = 0; y < sp.num_actions(); ++y) action[y] += inst.nodes[i].unary_action[y];
    }
    for (double& v : actor) v /= n;
    for (double& v : action) v /= n;

    std::vector<double> nb(nt);
    for (int t = 0; t < sp.num_valid(); ++t) nb[t] = actor[sp.actor_of(t)] * action[sp.action_of(t)];
    nb[sp.background_tuple()] = joint[sp.background_tuple()];
    if (kind == RecoKind::nb) return nb;

    std::vector<double> out(nt);
    for (int t = 0; t < nt; ++t) out[t] = lambda * nb[t] + (1.0 - lambda) * joint[t];
    return out;
}

void attach_tuple_label_costs(EnergyModel& model, const std::vector<double>& tuple_scores) {
    if (static_cast<int>(tuple_scores.size()) != model.num_labels) {
        throw std::invalid_argument("label cost vector size mismatch");
    }
    model.label_cost.resize(tuple_scores.size());
    for (size_t t = 0; t < tuple_scores.size(); ++t) {
        model.label_cost[t] = label_cost_energy(tuple_scores[t]);
    }
}

std::vector<double> marginal_actor_costs(const LabelSpace& space, const std::vector<double>& tuple_scores) {
    std::vector<double> best(space.num_actors() + 1, 0.0);
    for (int t = 0; t < space.num_valid(); ++t) {
        best[space.actor_of(t)] = std::max(best[space.actor_of(t)], tuple_scores[t]);
    }
    best[space.num_actors()] = tuple_scores[space.background_tuple()];
    std::vector<double> costs(best.size());
    for (size_t a = 0; a < best.size(); ++a) costs[a] = label_cost_energy(best[a]);
    return costs;
}

std::vector<double> marginal_action_costs(const LabelSpace& space, const std::vector<double>& tuple_scores,
                                          bool with_background_label) {
    std::vector<double> best(space.num_actions() + (with_background_label ? 1 : 0), 0.0);
    for (int t = 0; t < space.num_valid(); ++t) {
        best[space.action_of(t)] = std::max(best[space.action_of(t)], tuple_scores[t]);
    }
    if (with_background_label) best[space.num_actions()] = tuple_scores[space.background_tuple()];
    std::vector<double> costs(best.size());
    for (size_t y = 0; y < best.size(); ++y) costs[y] = label_cost_energy(best[y]);
    return costs;
}

std::vector<PairLabel> pairs_from_tuples(const LabelSpace& space, const std::vector<int>& tuples) {
    std::vector<PairLabel> out(tuples.size());
    for (size_t i = 0; i < tuples.size(); ++i) out[i] = space.pair_of(tuples[i]);
    return out;
}

std::vector<PairLabel> pairs_from_fields(const LabelSpace& space, const std::vector<int>& actor_labels,
                                         const std::vector<int>& action_labels) {
    if (actor_labels.size() != action_labels.size()) {
        throw std::invalid_argument("field labeling size mismatch");
    }
    std::vector<PairLabel> out(actor_labels.size());
    for (size_t i = 0; i < out.size(); ++i) {
        int y = action_labels[i];
        if (y == space.num_actions()) y = space.none_action();  // background field label
        out[i] = {actor_labels[i], y};
    }
    return out;
}

SegmentationRun run_segmentation(const Instance& inst, const SegOptions& opt) {
    auto solve = [&](const EnergyModel& m) {
        return opt.solver == SolverKind::expansion ? alpha_expansion(m, opt.solve)
                                                   : alpha_beta_swap(m, opt.solve);
    };

    SegmentationRun run;
    switch (opt.model) {
        case ModelKind::nb: {
            NaiveBayesModels nb = build_naive_bayes(inst);
            if (opt.label_costs) {
                auto scores = video_recognition(inst, RecoKind::nb, opt.lambda);
                nb.actor_field.label_cost = marginal_actor_costs(inst.space, scores);
                nb.action_field.label_cost = marginal_action_costs(inst.space, scores, true);
            }
            run.stages.push_back(solve(nb.actor_field));
            run.stages.push_back(solve(nb.action_field));
            run.pairs = pairs_from_fields(inst.space, run.stages[0].labeling, run.stages[1].labeling);
            break;
        }
        case ModelKind::cond: {
            NaiveBayesModels nb = build_naive_bayes(inst);
            std::vector<double> scores;
            if (opt.label_costs) {
                scores = video_recognition(inst, RecoKind::trilayer, opt.lambda);
                nb.actor_field.label_cost = marginal_actor_costs(inst.space, scores);
            }
            run.stages.push_back(solve(nb.actor_field));
            EnergyModel stage2 = build_conditional_stage2(inst, run.stages[0].labeling);
            if (opt.label_costs) {
                stage2.label_cost = marginal_action_costs(inst.space, scores, false);
            }
            run.stages.push_back(solve(stage2));
            run.pairs = pairs_from_fields(inst.space, run.stages[0].labeling, run.stages[1].labeling);
            break;
        }
        default: {
            EnergyModel m = opt.model == ModelKind::jps        ? build_joint_product(inst)
                            : opt.model == ModelKind::bilayer  ? build_bilayer(inst)
                                                               : build_trilayer(inst);
            if (opt.label_costs) {
                attach_tuple_label_costs(m, video_recognition(inst, RecoKind::trilayer, opt.lambda));
            }
            run.stages.push_back(solve(m));
            run.pairs = pairs_from_tuples(inst.space, run.stages[0].labeling);
            break;
        }
    }
    for (const auto& s : run.stages) run.energy += s.energy;
    return run;
}

}  // namespace a2dcrf

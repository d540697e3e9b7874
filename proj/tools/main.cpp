#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "a2dcrf/instance.hpp"
#include "a2dcrf/metrics.hpp"
#include "a2dcrf/models.hpp"
#include "a2dcrf/solve.hpp"
#include "a2dcrf/synth.hpp"

using namespace a2dcrf;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::pair<int, int> parse_lattice(const std::string& spec) {
    auto x = spec.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("--lattice", "expected WxH, e.g. 8x8");
    int w = std::stoi(spec.substr(0, x));
    int h = std::stoi(spec.substr(x + 1));
    if (w <= 0 || h <= 0) throw CLI::ValidationError("--lattice", "dimensions must be positive");
    return {w, h};
}

// Label space declarations reuse the instance header sections.
LabelSpace parse_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label space file: " + path);
    std::vector<std::string> actors, actions;
    std::vector<std::pair<int, int>> valid;
    std::string line;
    int pending_pairs = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (pending_pairs > 0) {
            std::string action;
            if (!(ls >> action)) throw std::runtime_error("bad valid pair line: " + line);
            auto fa = std::find(actors.begin(), actors.end(), kw);
            auto fy = std::find(actions.begin(), actions.end(), action);
            if (fa == actors.end() || fy == actions.end()) {
                throw std::runtime_error("unknown name in valid pair: " + line);
            }
            valid.emplace_back(static_cast<int>(fa - actors.begin()),
                               static_cast<int>(fy - actions.begin()));
            --pending_pairs;
            continue;
        }
        if (kw == "actors" || kw == "actions") {
            int k;
            if (!(ls >> k)) throw std::runtime_error("missing count in " + kw);
            std::string name;
            auto& dst = kw == "actors" ? actors : actions;
            while (ls >> name) dst.push_back(name);
            if (static_cast<int>(dst.size()) != k) throw std::runtime_error("count mismatch in " + kw);
        } else if (kw == "valid") {
            if (!(ls >> pending_pairs)) throw std::runtime_error("missing count in valid");
        } else {
            throw std::runtime_error("unexpected keyword in label space file: " + kw);
        }
    }
    return LabelSpace(actors, actions, valid);
}

LabelSpace resolve_space(const std::vector<std::string>& labels) {
    if (labels.empty() || labels[0] == "a2d") return LabelSpace::a2d();
    if (labels[0] == "mini") return LabelSpace::mini();
    if (labels[0] == "spec") {
        if (labels.size() != 2) throw CLI::ValidationError("--labels", "usage: --labels spec FILE");
        return parse_space_file(labels[1]);
    }
    throw CLI::ValidationError("--labels", "expected a2d, mini or spec FILE");
}

std::string class_token(const LabelSpace& sp, int tuple) {
    return sp.actor_name(sp.actor_of(tuple)) + "-" + sp.action_name(sp.action_of(tuple));
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    Csv csv;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            csv.rows.push_back(std::move(cells));
        }
    }
    return csv;
}

int run(int argc, char** argv) {
    CLI::App app{"Actor-action segmentation models, graph-cuts inference and metrics"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
    std::string gen_out, gen_lattice = "8x8", tracks_out;
    std::vector<std::string> gen_labels = {"a2d"};
    std::uint64_t gen_seed = 0;
    double gen_noise = 0.2;
    bool gen_long = false;
    int gen_frames = 8, gen_switches = 2;
    gen->add_option("--out", gen_out, "Instance output file")->required();
    gen->add_option("--seed", gen_seed, "Generator seed")->required();
    gen->add_option("--lattice", gen_lattice, "Lattice dimensions WxH")->required();
    gen->add_option("--labels", gen_labels, "Label space: a2d | mini | spec FILE")
        ->expected(1, 2);
    gen->add_option("--noise", gen_noise, "Noise level in [0,1)")->required();
    gen->add_flag("--long", gen_long, "Generate a long video with tracks");
    gen->add_option("--frames", gen_frames, "Frame count for --long");
    gen->add_option("--switches", gen_switches, "Action switches per actor for --long");
    gen->add_option("--tracks-out", tracks_out, "Track output file for --long");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "Run a segmentation model");
    std::string solve_in, solve_model = "trilayer", solve_out, solve_report, solve_solver = "expansion";
    bool solve_costs = false;
    double solve_lambda = 0.5;
    int solve_sweeps = 10;
    solve->add_option("--in", solve_in, "Instance file")->required();
    solve->add_option("--model", solve_model, "nb | jps | cond | bilayer | trilayer")->required();
    solve->add_flag("--label-costs", solve_costs, "Attach video-level label costs");
    solve->add_option("--lambda", solve_lambda, "Recognition combination weight");
    solve->add_option("--solver", solve_solver, "expansion | swap");
    solve->add_option("--max-sweeps", solve_sweeps, "Sweep limit");
    solve->add_option("--out", solve_out, "Labeling output file")->required();
    solve->add_option("--report", solve_report, "Energy trace CSV");

    // ---- recognize ----
    auto* rec = app.add_subcommand("recognize", "Video-level recognition scores");
    std::string rec_in, rec_model = "trilayer", rec_out;
    double rec_lambda = 0.5;
    rec->add_option("--in", rec_in, "Instance file")->required();
    rec->add_option("--model", rec_model, "nb | jps | trilayer")->required();
    rec->add_option("--lambda", rec_lambda, "Combination weight");
    rec->add_option("--out", rec_out, "Scores CSV")->required();

    // ---- eval-seg ----
    auto* eseg = app.add_subcommand("eval-seg", "Per-class segmentation accuracy");
    std::string eseg_in, eseg_lab, eseg_out;
    eseg->add_option("--in", eseg_in, "Instance file")->required();
    eseg->add_option("--labeling", eseg_lab, "Labeling file")->required();
    eseg->add_option("--out", eseg_out, "Accuracy CSV")->required();

    // ---- eval-tracks ----
    auto* etr = app.add_subcommand("eval-tracks", "Temporal track recall curve");
    std::string etr_in, etr_tracks, etr_lab, etr_out;
    etr->add_option("--in", etr_in, "Instance file")->required();
    etr->add_option("--tracks", etr_tracks, "Track file")->required();
    etr->add_option("--labeling", etr_lab, "Labeling file")->required();
    etr->add_option("--out", etr_out, "Recall CSV")->required();

    // ---- eval-map ----
    auto* emap = app.add_subcommand("eval-map", "Mean average precision");
    std::string emap_scores, emap_gt, emap_out;
    emap->add_option("--scores", emap_scores, "CSV: video,class,score")->required();
    emap->add_option("--gt", emap_gt, "CSV: video,class,relevant")->required();
    emap->add_option("--out", emap_out, "AP CSV")->required();

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "Brute-force global minimum");
    std::string oracle_in, oracle_model = "trilayer";
    bool oracle_costs = false;
    oracle->add_option("--in", oracle_in, "Instance file")->required();
    oracle->add_option("--model", oracle_model, "nb | jps | cond | bilayer | trilayer")->required();
    oracle->add_flag("--label-costs", oracle_costs, "Attach video-level label costs");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Compare solver against the oracle");
    std::string verify_in, verify_model = "trilayer";
    verify->add_option("--in", verify_in, "Instance file")->required();
    verify->add_option("--model", verify_model, "nb | jps | cond | bilayer | trilayer")->required();

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "Repeated solver timing");
    std::string bench_in, bench_model = "trilayer";
    int bench_repeat = 3;
    bench->add_option("--in", bench_in, "Instance file")->required();
    bench->add_option("--model", bench_model, "nb | jps | cond | bilayer | trilayer")->required();
    bench->add_option("--repeat", bench_repeat, "Run count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        SynthParams params;
        params.space = resolve_space(gen_labels);
        auto [w, h] = parse_lattice(gen_lattice);
        params.width = w;
        params.height = h;
        params.noise = gen_noise;
        if (gen_long) {
            LongVideoParams lp;
            lp.base = params;
            lp.frames = gen_frames;
            lp.switches = gen_switches;
            LongVideo lv = generate_long_video(lp, gen_seed);
            write_file(gen_out, serialize_instance(lv.instance));
            if (!tracks_out.empty()) write_file(tracks_out, serialize_tracks(lv.tracks));
        } else {
            write_file(gen_out, serialize_instance(generate_instance(params, gen_seed)));
        }
        return 0;
    }

    if (solve->parsed()) {
        Instance inst = parse_instance_file(solve_in);
        SegOptions opt;
        opt.model = model_kind_from_name(solve_model);
        opt.label_costs = solve_costs;
        opt.lambda = solve_lambda;
        if (solve_solver == "expansion") {
            opt.solver = SolverKind::expansion;
        } else if (solve_solver == "swap") {
            opt.solver = SolverKind::swap;
        } else {
            throw std::runtime_error("unknown solver '" + solve_solver + "'");
        }
        opt.solve.max_sweeps = solve_sweeps;
        SegmentationRun run = run_segmentation(inst, opt);
        write_file(solve_out, serialize_labeling(run.pairs, inst.space));
        if (!solve_report.empty()) {
            std::ostringstream csv;
            csv << "move,energy\n";
            int move = 0;
            for (const auto& stage : run.stages) {
                for (double e : stage.energy_trace) csv << move++ << ',' << fmt(e) << '\n';
            }
            write_file(solve_report, csv.str());
        }
        std::cout << "energy " << fmt(run.energy) << "\n";
        return 0;
    }

    if (rec->parsed()) {
        Instance inst = parse_instance_file(rec_in);
        auto scores = video_recognition(inst, reco_kind_from_name(rec_model), rec_lambda);
        std::ostringstream csv;
        csv << "class,score\n";
        for (int t = 0; t < inst.space.num_tuples(); ++t) {
            csv << class_token(inst.space, t) << ',' << fmt(scores[t]) << '\n';
        }
        write_file(rec_out, csv.str());
        return 0;
    }

    if (eseg->parsed()) {
        Instance inst = parse_instance_file(eseg_in);
        auto pairs = parse_labeling_file(eseg_lab, inst.space);
        auto pred = project_labeling(inst, pairs);
        auto gt = project_ground_truth(inst);
        SegAccuracy acc = per_class_accuracy(pred, gt);
        std::ostringstream csv;
        csv << "class,accuracy\n";
        for (const auto& [cls, a] : acc.per_class) {
            csv << class_token(inst.space, cls) << ',' << fmt(a) << '\n';
        }
        csv << "mean," << fmt(acc.mean) << '\n';
        write_file(eseg_out, csv.str());
        return 0;
    }

    if (etr->parsed()) {
        Instance inst = parse_instance_file(etr_in);
        TrackSet tracks = parse_tracks_file(etr_tracks, inst.space);
        auto pairs = parse_labeling_file(etr_lab, inst.space);
        auto pred = project_labeling(inst, pairs);
        auto curve = recall_curve(pred, tracks);
        std::ostringstream csv;
        csv << "sigma,recall\n";
        for (int k = 0; k <= 10; ++k) {
            csv << fmt(k / 10.0) << ',' << fmt(curve[k]) << '\n';
        }
        write_file(etr_out, csv.str());
        return 0;
    }

    if (emap->parsed()) {
        Csv sc = read_csv(emap_scores);
        Csv gt = read_csv(emap_gt);
        if (sc.header != std::vector<std::string>{"video", "class", "score"}) {
            throw std::runtime_error("scores csv must have header video,class,score");
        }
        if (gt.header != std::vector<std::string>{"video", "class", "relevant"}) {
            throw std::runtime_error("gt csv must have header video,class,relevant");
        }
        std::vector<std::string> videos, classes;
        auto index_of = [](std::vector<std::string>& list, const std::string& key) {
            for (size_t k = 0; k < list.size(); ++k) {
                if (list[k] == key) return static_cast<int>(k);
            }
            list.push_back(key);
            return static_cast<int>(list.size()) - 1;
        };
        std::vector<std::tuple<int, int, double>> entries;
        for (const auto& row : sc.rows) {
            if (row.size() != 3) throw std::runtime_error("bad scores row");
            entries.emplace_back(index_of(videos, row[0]), index_of(classes, row[1]), std::stod(row[2]));
        }
        std::vector<std::vector<double>> scores(videos.size(), std::vector<double>(classes.size(), 0.0));
        std::vector<std::vector<char>> have(videos.size(), std::vector<char>(classes.size(), 0));
        for (auto [v, c, s] : entries) {
            scores[v][c] = s;
            have[v][c] = 1;
        }
        for (size_t v = 0; v < videos.size(); ++v) {
            for (size_t c = 0; c < classes.size(); ++c) {
                if (!have[v][c]) {
                    throw std::runtime_error("missing score for video " + videos[v] + " class " + classes[c]);
                }
            }
        }
        std::vector<std::vector<int>> rel(videos.size(), std::vector<int>(classes.size(), 0));
        for (const auto& row : gt.rows) {
            if (row.size() != 3) throw std::runtime_error("bad gt row");
            auto fv = std::find(videos.begin(), videos.end(), row[0]);
            auto fc = std::find(classes.begin(), classes.end(), row[1]);
            if (fv == videos.end() || fc == classes.end()) {
                throw std::runtime_error("gt row references unscored video or class");
            }
            rel[fv - videos.begin()][fc - classes.begin()] = std::stoi(row[2]) != 0;
        }
        ApReport r = mean_average_precision(scores, rel);
        std::ostringstream csv;
        csv << "class,ap\n";
        for (const auto& [c, ap] : r.per_class) csv << classes[c] << ',' << fmt(ap) << '\n';
        csv << "mean," << fmt(r.map) << '\n';
        write_file(emap_out, csv.str());
        return 0;
    }

    if (oracle->parsed() || verify->parsed()) {
        const bool verifying = verify->parsed();
        Instance inst = parse_instance_file(verifying ? verify_in : oracle_in);
        ModelKind kind = model_kind_from_name(verifying ? verify_model : oracle_model);
        const bool costs = verifying ? false : oracle_costs;

        // Per-stage models; nb and cond verify per field.
        std::vector<EnergyModel> stage_models;
        std::vector<double> solver_energy;
        SegOptions opt;
        opt.model = kind;
        opt.label_costs = costs;
        SegmentationRun run = run_segmentation(inst, opt);
        switch (kind) {
            case ModelKind::nb: {
                NaiveBayesModels nb = build_naive_bayes(inst);
                if (costs) {
                    auto scores = video_recognition(inst, RecoKind::nb, 0.5);
                    nb.actor_field.label_cost = marginal_actor_costs(inst.space, scores);
                    nb.action_field.label_cost = marginal_action_costs(inst.space, scores, true);
                }
                stage_models.push_back(std::move(nb.actor_field));
                stage_models.push_back(std::move(nb.action_field));
                break;
            }
            case ModelKind::cond: {
                NaiveBayesModels nb = build_naive_bayes(inst);
                std::vector<double> scores;
                if (costs) {
                    scores = video_recognition(inst, RecoKind::trilayer, 0.5);
                    nb.actor_field.label_cost = marginal_actor_costs(inst.space, scores);
                }
                OracleResult stage1 = brute_force(nb.actor_field);
                EnergyModel stage2 = build_conditional_stage2(inst, stage1.labeling);
                if (costs) stage2.label_cost = marginal_action_costs(inst.space, scores, false);
                stage_models.push_back(std::move(nb.actor_field));
                stage_models.push_back(std::move(stage2));
                break;
            }
            default: {
                EnergyModel m = kind == ModelKind::jps       ? build_joint_product(inst)
                                : kind == ModelKind::bilayer ? build_bilayer(inst)
                                                             : build_trilayer(inst);
                if (costs) {
                    attach_tuple_label_costs(m, video_recognition(inst, RecoKind::trilayer, 0.5));
                }
                stage_models.push_back(std::move(m));
                break;
            }
        }
        for (const auto& stage : run.stages) solver_energy.push_back(stage.energy);

        bool pass = true;
        for (size_t s = 0; s < stage_models.size(); ++s) {
            OracleResult o = brute_force(stage_models[s]);
            if (verifying) {
                std::cout << "stage " << s << " solver " << fmt(solver_energy[s]) << " oracle "
                          << fmt(o.energy) << "\n";
                pass = pass && std::abs(solver_energy[s] - o.energy) <= 1e-6;
            } else {
                std::cout << "stage " << s << " oracle_energy " << fmt(o.energy) << "\n";
            }
        }
        if (verifying) {
            std::cout << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? 0 : 1;
        }
        return 0;
    }

    if (bench->parsed()) {
        Instance inst = parse_instance_file(bench_in);
        SegOptions opt;
        opt.model = model_kind_from_name(bench_model);
        std::cout << "run,sweeps,moves,final_energy,wall_ms\n";
        for (int r = 0; r < bench_repeat; ++r) {
            SegmentationRun run = run_segmentation(inst, opt);
            int sweeps = 0, moves = 0;
            double wall = 0;
            for (const auto& stage : run.stages) {
                sweeps += stage.sweeps;
                moves += stage.accepted_moves;
                wall += stage.wall_ms;
            }
            std::cout << r << ',' << sweeps << ',' << moves << ',' << fmt(run.energy) << ','
                      << fmt(wall) << "\n";
        }
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

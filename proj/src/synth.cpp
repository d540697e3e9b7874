#include "a2dcrf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "a2dcrf/potentials.hpp"
#include "a2dcrf/rng.hpp"

namespace a2dcrf {

namespace {

constexpr double kInRegionChi2 = 0.1;
constexpr double kAcrossChi2 = 10.0;
// Non-boosted entries draw uniformly from [kNoiseLow, 1] of the noise level;
// the lower bound keeps single stray draws from dominating a table sum.
constexpr double kNoiseLow = 0.3;

// Multi-source BFS from the seed cells; every cell joins the first region
// that reaches it, which keeps regions connected. Seed placements that leave
// a region with fewer than four cells are redrawn (when the lattice allows)
// so every planted label has a usable footprint.
std::vector<int> grow_regions(int width, int height, int regions, Rng& rng) {
    const int n = width * height;
    const int min_cells = n >= 4 * regions ? 4 : 1;
    std::vector<int> region(n);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::fill(region.begin(), region.end(), -1);
        std::deque<int> queue;
        for (int r = 0; r < regions; ++r) {
            int cell;
            do {
                cell = rng.uniform_int(n);
            } while (region[cell] != -1);
            region[cell] = r;
            queue.push_back(cell);
        }
        while (!queue.empty()) {
            int cell = queue.front();
            queue.pop_front();
            int x = cell % width, y = cell / width;
            const int nbr[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (const auto& [nx, ny] : nbr) {
                if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
                int c = ny * width + nx;
                if (region[c] == -1) {
                    region[c] = region[cell];
                    queue.push_back(c);
                }
            }
        }
        std::vector<int> size(regions, 0);
        for (int r : region) ++size[r];
        if (*std::min_element(size.begin(), size.end()) >= min_cells) break;
    }
    return region;
}

// Boosted entry per score table of one planted region. Classifier errors in
// real pipelines correlate over a segment's supervoxels, so the flip decision
// is drawn once per region and table, not per node: with probability noise a
// table's boost lands on a random entry for the whole region.
struct TableTargets {
    int actor = -1;
    int action = -1;
    int joint = -1;
    int cond_action = -1;
    int cond_actor = -1;
};

TableTargets decide_targets(const LabelSpace& sp, int tuple, double noise, Rng& rng) {
    const bool bg = tuple == sp.background_tuple();
    auto maybe_flip = [&](int target, int size, double rate) {
        if (target < 0) return target;
        return rng.bernoulli(rate) ? rng.uniform_int(size) : target;
    };
    TableTargets t;
    t.actor = maybe_flip(bg ? -1 : sp.actor_of(tuple), sp.num_actors(), noise);
    t.action = maybe_flip(sp.action_of(tuple), sp.num_actions(), noise);
    t.joint = maybe_flip(tuple, sp.num_tuples(), noise);
    // Conditional classifiers are trained per actor and considerably more
    // reliable than the generic tables; they confuse at a reduced rate.
    t.cond_action = maybe_flip(bg ? -1 : tuple, sp.num_valid(), noise / 3.0);
    t.cond_actor = maybe_flip(bg ? -1 : tuple, sp.num_valid(), noise / 3.0);
    return t;
}

// One score table: the boosted entry (if any) gets 1-noise, the rest get
// noise-scaled uniform values. `suppress` pins one entry to the floor (used
// for the joint table's background entry, which real classifiers separate
// sharply from the actor classes) unless that entry is the boosted one.
// Everything maps linearly into [floor, 1].
std::vector<double> noisy_table(int size, int boosted, double noise, Rng& rng, int suppress = -1) {
    const double spread = noise / std::pow(static_cast<double>(size), 0.25);
    std::vector<double> out(size);
    for (int e = 0; e < size; ++e) {
        double raw;
        if (e == boosted) {
            raw = 1.0 - noise;
        } else if (e == suppress) {
            raw = 0.0;
        } else {
            raw = spread * (kNoiseLow + (1.0 - kNoiseLow) * rng.uniform_real());
        }
        out[e] = kScoreFloor + (1.0 - kScoreFloor) * raw;
    }
    return out;
}

NodeScores planted_scores(const LabelSpace& sp, const TableTargets& t, double noise, Rng& rng) {
    NodeScores sc;
    sc.unary_actor = noisy_table(sp.num_actors(), t.actor, noise, rng);
    sc.unary_action = noisy_table(sp.num_actions(), t.action, noise, rng);
    sc.unary_joint = noisy_table(sp.num_tuples(), t.joint, noise, rng, sp.background_tuple());
    sc.cond_action = noisy_table(sp.num_valid(), t.cond_action, noise, rng);
    sc.cond_actor = noisy_table(sp.num_valid(), t.cond_actor, noise, rng);
    return sc;
}

std::vector<double> frequency_scores(const LabelSpace& sp, const std::vector<int>& planted) {
    std::vector<double> freq(sp.num_tuples(), 0.0);
    for (int t : planted) freq[t] += 1.0;
    for (double& f : freq) {
        f = std::clamp(f / static_cast<double>(planted.size()), kScoreFloor, 1.0);
    }
    return freq;
}

void check_params(const SynthParams& p) {
    if (p.width <= 0 || p.height <= 0) throw std::invalid_argument("lattice dimensions must be positive");
    if (!(p.noise >= 0.0 && p.noise < 1.0)) throw std::invalid_argument("noise must lie in [0,1)");
    if (p.regions <= 0) throw std::invalid_argument("region count must be positive");
    if (p.regions > p.width * p.height) {
        throw std::invalid_argument("region count exceeds node count");
    }
    if (!(p.theta_actor > 0 && p.theta_action > 0 && p.theta_joint > 0)) {
        throw std::invalid_argument("theta values must be positive");
    }
}

}  // namespace

Instance generate_instance(const SynthParams& params, std::uint64_t seed) {
    check_params(params);
    Rng rng(seed);
    const LabelSpace& sp = params.space;
    const int w = params.width, h = params.height, n = w * h;

    std::vector<int> region = grow_regions(w, h, params.regions, rng);
    std::vector<int> region_tuple(params.regions);
    for (int r = 0; r < params.regions; ++r) {
        // Distinct labels per region while the space allows it.
        int t = rng.uniform_int(sp.num_tuples());
        if (params.regions <= sp.num_tuples()) {
            while (std::find(region_tuple.begin(), region_tuple.begin() + r, t) !=
                   region_tuple.begin() + r) {
                t = rng.uniform_int(sp.num_tuples());
            }
        }
        region_tuple[r] = t;
    }
    std::vector<int> planted(n);
    for (int i = 0; i < n; ++i) planted[i] = region_tuple[region[i]];

    std::vector<TableTargets> targets(params.regions);
    for (int r = 0; r < params.regions; ++r) {
        targets[r] = decide_targets(sp, region_tuple[r], params.noise, rng);
    }

    Instance inst;
    inst.space = sp;
    inst.theta_actor = params.theta_actor;
    inst.theta_action = params.theta_action;
    inst.theta_joint = params.theta_joint;
    inst.nodes.reserve(n);
    for (int i = 0; i < n; ++i) {
        inst.nodes.push_back(planted_scores(sp, targets[region[i]], params.noise, rng));
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int i = y * w + x;
            if (x + 1 < w) {
                int j = i + 1;
                inst.edges.push_back({i, j, region[i] == region[j] ? kInRegionChi2 : kAcrossChi2});
            }
            if (y + 1 < h) {
                int j = i + w;
                inst.edges.push_back({i, j, region[i] == region[j] ? kInRegionChi2 : kAcrossChi2});
            }
        }
    }
    std::sort(inst.edges.begin(), inst.edges.end(), [](const InstanceEdge& a, const InstanceEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    inst.video_scores = frequency_scores(sp, planted);
    inst.frame_count = 1;
    inst.frame_w = w;
    inst.frame_h = h;
    inst.pixels.resize(n);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) inst.pixels[y * w + x].push_back({0, x, y});
    }
    inst.gt = planted;
    inst.validate();
    return inst;
}

LongVideo generate_long_video(const LongVideoParams& params, std::uint64_t seed) {
    check_params(params.base);
    const int frames = params.frames;
    if (frames <= 0) throw std::invalid_argument("frame count must be positive");
    if (params.switches < 0) throw std::invalid_argument("switch count must be nonnegative");
    if (params.switches > frames - 1) {
        throw std::invalid_argument("switch count exceeds frame count");
    }

    Rng rng(seed);
    const LabelSpace& sp = params.base.space;
    const int w = params.base.width, h = params.base.height;
    const int cells = w * h;
    const int regions = params.base.regions;

    std::vector<int> region = grow_regions(w, h, regions, rng);

    // Region 0 is always a real actor so at least one track exists.
    std::vector<int> region_actor(regions);
    for (int r = 0; r < regions; ++r) {
        region_actor[r] = r == 0 ? rng.uniform_int(sp.num_actors())
                                 : rng.uniform_int(sp.num_actors() + 1);  // num_actors() = background
    }

    std::vector<std::vector<int>> actions_of(sp.num_actors());
    for (int t = 0; t < sp.num_valid(); ++t) actions_of[sp.actor_of(t)].push_back(sp.action_of(t));

    // Per region: the action in force at every frame.
    std::vector<std::vector<int>> region_action(regions, std::vector<int>(frames, sp.none_action()));
    for (int r = 0; r < regions; ++r) {
        if (region_actor[r] == sp.num_actors()) continue;  // background region
        const auto& acts = actions_of[region_actor[r]];
        if (acts.empty()) throw std::invalid_argument("planted actor has no valid action");
        if (params.switches > 0 && acts.size() < 2) {
            throw std::invalid_argument("action switches need an actor with at least two valid actions");
        }
        std::vector<int> switch_at;
        while (static_cast<int>(switch_at.size()) < params.switches) {
            int t = 1 + rng.uniform_int(frames - 1);
            if (std::find(switch_at.begin(), switch_at.end(), t) == switch_at.end()) {
                switch_at.push_back(t);
            }
        }
        std::sort(switch_at.begin(), switch_at.end());
        int current = acts[rng.uniform_int(static_cast<int>(acts.size()))];
        size_t next_switch = 0;
        for (int f = 0; f < frames; ++f) {
            if (next_switch < switch_at.size() && f == switch_at[next_switch]) {
                int candidate = current;
                while (candidate == current) {
                    candidate = acts[rng.uniform_int(static_cast<int>(acts.size()))];
                }
                current = candidate;
                ++next_switch;
            }
            region_action[r][f] = current;
        }
    }

    auto tuple_at = [&](int r, int f) {
        if (region_actor[r] == sp.num_actors()) return sp.background_tuple();
        return sp.tuple_index(region_actor[r], region_action[r][f]);
    };

    const int n = cells * frames;
    std::vector<int> planted(n);
    for (int f = 0; f < frames; ++f) {
        for (int c = 0; c < cells; ++c) planted[f * cells + c] = tuple_at(region[c], f);
    }

    // One flip decision per region and constant-action run.
    std::vector<std::vector<TableTargets>> targets(regions, std::vector<TableTargets>(frames));
    for (int r = 0; r < regions; ++r) {
        for (int f = 0; f < frames; ++f) {
            if (f > 0 && tuple_at(r, f) == tuple_at(r, f - 1)) {
                targets[r][f] = targets[r][f - 1];
            } else {
                targets[r][f] = decide_targets(sp, tuple_at(r, f), params.base.noise, rng);
            }
        }
    }

    Instance inst;
    inst.space = sp;
    inst.theta_actor = params.base.theta_actor;
    inst.theta_action = params.base.theta_action;
    inst.theta_joint = params.base.theta_joint;
    inst.nodes.reserve(n);
    for (int f = 0; f < frames; ++f) {
        for (int c = 0; c < cells; ++c) {
            inst.nodes.push_back(planted_scores(sp, targets[region[c]][f], params.base.noise, rng));
        }
    }
    for (int f = 0; f < frames; ++f) {
        const int base = f * cells;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                int i = base + y * w + x;
                if (x + 1 < w) {
                    inst.edges.push_back(
                        {i, i + 1, planted[i] == planted[i + 1] ? kInRegionChi2 : kAcrossChi2});
                }
                if (y + 1 < h) {
                    inst.edges.push_back(
                        {i, i + w, planted[i] == planted[i + w] ? kInRegionChi2 : kAcrossChi2});
                }
                if (f + 1 < frames) {
                    inst.edges.push_back(
                        {i, i + cells, planted[i] == planted[i + cells] ? kInRegionChi2 : kAcrossChi2});
                }
            }
        }
    }
    std::sort(inst.edges.begin(), inst.edges.end(), [](const InstanceEdge& a, const InstanceEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    inst.video_scores = frequency_scores(sp, planted);
    inst.frame_count = frames;
    inst.frame_w = w;
    inst.frame_h = h;
    inst.pixels.resize(n);
    for (int f = 0; f < frames; ++f) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) inst.pixels[f * cells + y * w + x].push_back({f, x, y});
        }
    }
    inst.gt = planted;
    inst.validate();

    TrackSet ts;
    ts.space = sp;
    ts.frame_count = frames;
    ts.frame_w = w;
    ts.frame_h = h;
    for (int r = 0; r < regions; ++r) {
        if (region_actor[r] == sp.num_actors()) continue;
        Box box{w, h, -1, -1};
        for (int c = 0; c < cells; ++c) {
            if (region[c] != r) continue;
            box.x0 = std::min(box.x0, c % w);
            box.y0 = std::min(box.y0, c / w);
            box.x1 = std::max(box.x1, c % w);
            box.y1 = std::max(box.y1, c / w);
        }
        int run_start = 0;
        for (int f = 1; f <= frames; ++f) {
            if (f < frames && region_action[r][f] == region_action[r][run_start]) continue;
            Track tr;
            tr.tuple = tuple_at(r, run_start);
            tr.t1 = run_start;
            tr.tm = f - 1;
            tr.boxes.assign(f - run_start, box);
            ts.tracks.push_back(std::move(tr));
            run_start = f;
        }
    }
    return {std::move(inst), std::move(ts)};
}

}  // namespace a2dcrf

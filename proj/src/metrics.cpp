#include "a2dcrf/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace a2dcrf {

namespace {

std::vector<FrameGrid> blank_grids(const Instance& inst, int fill) {
    if (!inst.has_frames()) throw std::invalid_argument("instance has no frame geometry");
    if (!inst.has_pixels()) throw std::invalid_argument("instance has no pixel masks");
    std::vector<FrameGrid> grids(inst.frame_count);
    for (int f = 0; f < inst.frame_count; ++f) {
        grids[f].frame = f;
        grids[f].w = inst.frame_w;
        grids[f].h = inst.frame_h;
        grids[f].cells.assign(static_cast<size_t>(inst.frame_w) * inst.frame_h, fill);
    }
    return grids;
}

}  // namespace

std::vector<FrameGrid> project_labeling(const Instance& inst, const std::vector<PairLabel>& pairs) {
    if (static_cast<int>(pairs.size()) != inst.num_nodes()) {
        throw std::invalid_argument("labeling size mismatch");
    }
    auto grids = blank_grids(inst, inst.space.background_tuple());
    for (int i = 0; i < inst.num_nodes(); ++i) {
        const int cls = inst.space.class_of_pair(pairs[i]);
        for (const auto& p : inst.pixels[i]) grids[p.frame].set(p.x, p.y, cls);
    }
    return grids;
}

std::vector<FrameGrid> project_ground_truth(const Instance& inst) {
    if (!inst.has_gt()) throw std::invalid_argument("instance has no ground truth");
    auto grids = blank_grids(inst, -1);
    for (int i = 0; i < inst.num_nodes(); ++i) {
        if (inst.gt[i] < 0) continue;
        for (const auto& p : inst.pixels[i]) grids[p.frame].set(p.x, p.y, inst.gt[i]);
    }
    return grids;
}

SegAccuracy per_class_accuracy(const std::vector<FrameGrid>& pred, const std::vector<FrameGrid>& gt) {
    std::map<int, const FrameGrid*> pred_by_frame;
    for (const auto& g : pred) pred_by_frame[g.frame] = &g;

    std::map<int, std::pair<long, long>> tally;  // class -> (correct, total)
    for (const auto& g : gt) {
        auto it = pred_by_frame.find(g.frame);
        if (it == pred_by_frame.end()) throw std::invalid_argument("prediction missing a labeled frame");
        const FrameGrid& p = *it->second;
        if (p.w != g.w || p.h != g.h) throw std::invalid_argument("frame dimension mismatch");
        for (size_t k = 0; k < g.cells.size(); ++k) {
            const int c = g.cells[k];
            if (c < 0) continue;
            auto& [correct, total] = tally[c];
            ++total;
            if (p.cells[k] == c) ++correct;
        }
    }
    if (tally.empty()) throw std::invalid_argument("ground truth has no labeled pixels");

    SegAccuracy out;
    double sum = 0;
    for (const auto& [cls, ct] : tally) {
        double acc = static_cast<double>(ct.first) / static_cast<double>(ct.second);
        out.per_class.emplace_back(cls, acc);
        sum += acc;
    }
    out.mean = sum / static_cast<double>(out.per_class.size());
    return out;
}

SingleLabelAccuracy single_label_accuracy(const std::vector<PairLabel>& pred,
                                          const std::vector<PairLabel>& gt) {
    if (pred.size() != gt.size()) throw std::invalid_argument("prediction/ground truth size mismatch");
    if (pred.empty()) throw std::invalid_argument("empty prediction list");
    long a = 0, y = 0, t = 0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const bool actor_ok = pred[i].actor == gt[i].actor;
        const bool action_ok = pred[i].action == gt[i].action;
        a += actor_ok;
        y += action_ok;
        t += actor_ok && action_ok;
    }
    const double n = static_cast<double>(pred.size());
    return {a / n, y / n, t / n};
}

ApReport mean_average_precision(const std::vector<std::vector<double>>& scores,
                                const std::vector<std::vector<int>>& relevance) {
    if (scores.size() != relevance.size()) throw std::invalid_argument("score/relevance video count mismatch");
    if (scores.empty()) throw std::invalid_argument("no videos");
    const size_t num_classes = scores[0].size();
    for (size_t v = 0; v < scores.size(); ++v) {
        if (scores[v].size() != num_classes || relevance[v].size() != num_classes) {
            throw std::invalid_argument("ragged score/relevance rows");
        }
    }

    ApReport out;
    double sum = 0;
    for (size_t c = 0; c < num_classes; ++c) {
        std::vector<size_t> order(scores.size());
        std::iota(order.begin(), order.end(), 0);
        // Descending by score; stable, so ties keep input order.
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return scores[a][c] > scores[b][c]; });
        long relevant_seen = 0;
        double ap_sum = 0;
        for (size_t rank = 0; rank < order.size(); ++rank) {
            if (relevance[order[rank]][c]) {
                ++relevant_seen;
                ap_sum += static_cast<double>(relevant_seen) / static_cast<double>(rank + 1);
            }
        }
        if (relevant_seen == 0) continue;  // class absent from ground truth
        double ap = ap_sum / static_cast<double>(relevant_seen);
        out.per_class.emplace_back(static_cast<int>(c), ap);
        sum += ap;
    }
    if (out.per_class.empty()) throw std::invalid_argument("no class has a relevant item");
    out.map = sum / static_cast<double>(out.per_class.size());
    return out;
}

double track_recall(const std::vector<FrameGrid>& pred, const Track& track) {
    std::map<int, const FrameGrid*> by_frame;
    for (const auto& g : pred) by_frame[g.frame] = &g;
    long covered = 0;
    for (int t = track.t1; t <= track.tm; ++t) {
        auto it = by_frame.find(t);
        if (it == by_frame.end()) throw std::invalid_argument("prediction missing track frame");
        const FrameGrid& g = *it->second;
        const Box& b = track.boxes[t - track.t1];
        bool hit = false;
        for (int y = b.y0; y <= b.y1 && !hit; ++y) {
            for (int x = b.x0; x <= b.x1; ++x) {
                if (g.at(x, y) == track.tuple) {
                    hit = true;
                    break;
                }
            }
        }
        covered += hit;
    }
    return static_cast<double>(covered) / static_cast<double>(track.tm - track.t1 + 1);
}

bool track_hit(double recall, double sigma) {
    return sigma == 0.0 ? recall > 0.0 : recall >= sigma;
}

std::array<double, 11> recall_curve(const std::vector<FrameGrid>& pred, const TrackSet& tracks) {
    if (tracks.tracks.empty()) throw std::invalid_argument("empty track set");
    std::vector<double> recalls;
    recalls.reserve(tracks.tracks.size());
    for (const auto& tr : tracks.tracks) recalls.push_back(track_recall(pred, tr));
    std::array<double, 11> out{};
    for (int k = 0; k <= 10; ++k) {
        const double sigma = k / 10.0;
        long hits = 0;
        for (double r : recalls) hits += track_hit(r, sigma);
        out[k] = static_cast<double>(hits) / static_cast<double>(recalls.size());
    }
    return out;
}

}  // namespace a2dcrf

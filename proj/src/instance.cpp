#include "a2dcrf/instance.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace a2dcrf {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) toks.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

long parse_int(const std::string& tok, int line) {
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (errno != 0 || end == tok.c_str() || *end != '\0') {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    return v;
}

double parse_real(const std::string& tok, int line) {
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError(line, "expected number, got '" + tok + "'");
    }
    return v;
}

double parse_score(const std::string& tok, int line) {
    double v = parse_real(tok, line);
    if (!(v > 0.0) || v > 1.0) {
        throw ParseError(line, "score out of range (0,1]: " + tok);
    }
    return v;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Reads lines, tracks numbers and strips comments/blanks.
class LineReader {
public:
    explicit LineReader(std::istream& in) : m_in(in) {}

    bool next(std::vector<std::string>& toks) {
        std::string line;
        while (std::getline(m_in, line)) {
            ++m_line;
            toks = tokenize(line);
            if (!toks.empty()) return true;
        }
        return false;
    }

    int line() const { return m_line; }

private:
    std::istream& m_in;
    int m_line = 0;
};

std::vector<double> parse_scores(const std::vector<std::string>& toks, size_t from, size_t expect,
                                 int line, const char* what) {
    if (toks.size() - from != expect) {
        throw ParseError(line, std::string(what) + ": expected " + std::to_string(expect) +
                                   " values, got " + std::to_string(toks.size() - from));
    }
    std::vector<double> out;
    out.reserve(expect);
    for (size_t k = from; k < toks.size(); ++k) out.push_back(parse_score(toks[k], line));
    return out;
}

}  // namespace

bool Instance::has_gt() const {
    for (int g : gt) {
        if (g >= 0) return true;
    }
    return false;
}

void Instance::validate() const {
    const int n = num_nodes();
    const int na = space.num_actors();
    const int ny = space.num_actions();
    const int nv = space.num_valid();
    if (!(theta_actor > 0 && theta_action > 0 && theta_joint > 0)) {
        throw std::invalid_argument("theta values must be positive");
    }
    auto check_scores = [](const std::vector<double>& v, size_t len, const std::string& what) {
        if (v.size() != len) {
            throw std::invalid_argument(what + ": expected " + std::to_string(len) + " scores, got " +
                                        std::to_string(v.size()));
        }
        for (double s : v) {
            if (!(s > 0.0) || s > 1.0) throw std::invalid_argument(what + ": score out of range (0,1]");
        }
    };
    for (int i = 0; i < n; ++i) {
        const auto& sc = nodes[i];
        const std::string tag = "node " + std::to_string(i);
        check_scores(sc.unary_actor, na, tag + " unary_actor");
        check_scores(sc.unary_action, ny, tag + " unary_action");
        check_scores(sc.unary_joint, nv + 1, tag + " unary_joint");
        check_scores(sc.cond_action, nv, tag + " cond_action");
        check_scores(sc.cond_actor, nv, tag + " cond_actor");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (e.i >= e.j) throw std::invalid_argument("edges must be stored with i < j");
        if (!(e.chi2 >= 0)) throw std::invalid_argument("edge chi2 must be nonnegative");
        if (!seen.emplace(e.i, e.j).second) throw std::invalid_argument("duplicate edge");
    }
    if (!video_scores.empty()) check_scores(video_scores, nv + 1, "videoscores");
    if (!gt.empty()) {
        if (static_cast<int>(gt.size()) != n) throw std::invalid_argument("gt size mismatch");
        for (int g : gt) {
            if (g < -1 || g >= space.num_tuples()) throw std::invalid_argument("gt tuple out of range");
        }
    }
    if (frame_count < 0 || frame_w < 0 || frame_h < 0) {
        throw std::invalid_argument("negative frame geometry");
    }
    if (!pixels.empty()) {
        if (static_cast<int>(pixels.size()) != n) throw std::invalid_argument("pixels size mismatch");
        if (!has_frames()) throw std::invalid_argument("pixel masks require a frames declaration");
        std::set<PixelRef> owned;
        for (const auto& mask : pixels) {
            for (const auto& p : mask) {
                if (p.frame < 0 || p.frame >= frame_count || p.x < 0 || p.x >= frame_w || p.y < 0 ||
                    p.y >= frame_h) {
                    throw std::invalid_argument("pixel outside frame bounds");
                }
                if (!owned.insert(p).second) throw std::invalid_argument("pixel claimed twice");
            }
        }
    }
}

Instance parse_instance(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> toks;

    if (!reader.next(toks) || toks.size() != 2 || toks[0] != "a2dcrf" || toks[1] != "1") {
        throw ParseError(reader.line() == 0 ? 1 : reader.line(), "expected header 'a2dcrf 1'");
    }

    std::vector<std::string> actors, actions;
    std::vector<std::pair<int, int>> valid;
    bool have_actors = false, have_actions = false, have_valid = false, have_theta = false;
    bool have_nodes = false, have_edges = false, have_video = false, have_frames = false;
    double th_a = 0, th_y = 0, th_z = 0;
    int declared_edges = 0;

    Instance inst;
    std::optional<LabelSpace> space;
    std::vector<NodeScores> nodes;
    std::vector<std::array<bool, 5>> node_lines;  // which score lines were seen
    std::vector<InstanceEdge> edge_list;
    std::set<std::pair<int, int>> edge_seen;
    std::vector<double> video_scores;
    int frame_count = 0, frame_w = 0, frame_h = 0;
    std::vector<std::vector<PixelRef>> pixel_masks;
    std::set<PixelRef> pixel_owned;
    std::vector<int> gt;
    std::vector<bool> gt_seen;
    bool any_gt_line = false;

    auto need_space = [&](int line) -> const LabelSpace& {
        if (!space) throw ParseError(line, "label space not declared yet");
        return *space;
    };
    auto node_ref = [&](const std::vector<std::string>& t, int line) -> int {
        if (!have_nodes) throw ParseError(line, "nodes not declared yet");
        if (t.size() < 2) throw ParseError(line, "missing node id");
        long id = parse_int(t[1], line);
        if (id < 0 || id >= static_cast<long>(nodes.size())) {
            throw ParseError(line, "node id out of range: " + t[1]);
        }
        return static_cast<int>(id);
    };

    while (reader.next(toks)) {
        const int line = reader.line();
        const std::string& kw = toks[0];

        if (kw == "actors" || kw == "actions") {
            bool is_actor = kw == "actors";
            if ((is_actor && have_actors) || (!is_actor && have_actions)) {
                throw ParseError(line, "duplicate section '" + kw + "'");
            }
            if (toks.size() < 2) throw ParseError(line, "missing count");
            long k = parse_int(toks[1], line);
            if (k <= 0 || static_cast<long>(toks.size()) - 2 != k) {
                throw ParseError(line, kw + ": declared count does not match names");
            }
            auto& dst = is_actor ? actors : actions;
            dst.assign(toks.begin() + 2, toks.end());
            (is_actor ? have_actors : have_actions) = true;
        } else if (kw == "valid") {
            if (have_valid) throw ParseError(line, "duplicate section 'valid'");
            if (!have_actors || !have_actions) throw ParseError(line, "valid before actors/actions");
            if (toks.size() != 2) throw ParseError(line, "usage: valid <count>");
            long m = parse_int(toks[1], line);
            if (m <= 0) throw ParseError(line, "valid pair count must be positive");
            for (long t = 0; t < m; ++t) {
                if (!reader.next(toks)) throw ParseError(reader.line(), "unexpected end of valid pair list");
                if (toks.size() != 2) throw ParseError(reader.line(), "expected '<actor> <action>' pair");
                auto find = [&](const std::vector<std::string>& names, const std::string& n) {
                    auto it = std::find(names.begin(), names.end(), n);
                    if (it == names.end()) {
                        throw ParseError(reader.line(), "unknown name '" + n + "' in valid pair");
                    }
                    return static_cast<int>(it - names.begin());
                };
                valid.emplace_back(find(actors, toks[0]), find(actions, toks[1]));
            }
            try {
                space.emplace(actors, actions, valid);
            } catch (const std::invalid_argument& e) {
                throw ParseError(reader.line(), e.what());
            }
            have_valid = true;
        } else if (kw == "theta") {
            if (have_theta) throw ParseError(line, "duplicate section 'theta'");
            if (toks.size() != 4) throw ParseError(line, "usage: theta <actor> <action> <joint>");
            th_a = parse_real(toks[1], line);
            th_y = parse_real(toks[2], line);
            th_z = parse_real(toks[3], line);
            if (!(th_a > 0 && th_y > 0 && th_z > 0)) throw ParseError(line, "theta must be positive");
            have_theta = true;
        } else if (kw == "nodes") {
            if (have_nodes) throw ParseError(line, "duplicate section 'nodes'");
            need_space(line);
            if (toks.size() != 2) throw ParseError(line, "usage: nodes <count>");
            long n = parse_int(toks[1], line);
            if (n <= 0) throw ParseError(line, "node count must be positive");
            nodes.assign(n, NodeScores{});
            node_lines.assign(n, {});
            have_nodes = true;
        } else if (kw == "unary_actor" || kw == "unary_action" || kw == "unary_joint" ||
                   kw == "cond_action" || kw == "cond_actor") {
            const LabelSpace& sp = need_space(line);
            int id = node_ref(toks, line);
            int slot = kw == "unary_actor"    ? 0
                       : kw == "unary_action" ? 1
                       : kw == "unary_joint"  ? 2
                       : kw == "cond_action"  ? 3
                                              : 4;
            if (node_lines[id][slot]) {
                throw ParseError(line, "duplicate " + kw + " for node " + std::to_string(id));
            }
            node_lines[id][slot] = true;
            size_t expect = slot == 0   ? sp.num_actors()
                            : slot == 1 ? sp.num_actions()
                            : slot == 2 ? sp.num_valid() + 1
                                        : sp.num_valid();
            auto v = parse_scores(toks, 2, expect, line, kw.c_str());
            switch (slot) {
                case 0: nodes[id].unary_actor = std::move(v); break;
                case 1: nodes[id].unary_action = std::move(v); break;
                case 2: nodes[id].unary_joint = std::move(v); break;
                case 3: nodes[id].cond_action = std::move(v); break;
                case 4: nodes[id].cond_actor = std::move(v); break;
            }
        } else if (kw == "edges") {
            if (have_edges) throw ParseError(line, "duplicate section 'edges'");
            if (!have_nodes) throw ParseError(line, "edges before nodes");
            if (toks.size() != 2) throw ParseError(line, "usage: edges <count>");
            declared_edges = static_cast<int>(parse_int(toks[1], line));
            if (declared_edges < 0) throw ParseError(line, "edge count must be nonnegative");
            have_edges = true;
        } else if (kw == "edge") {
            if (!have_edges) throw ParseError(line, "edge line before 'edges' declaration");
            if (toks.size() != 4) throw ParseError(line, "usage: edge <i> <j> <chi2>");
            long i = parse_int(toks[1], line);
            long j = parse_int(toks[2], line);
            double chi2 = parse_real(toks[3], line);
            if (i < 0 || j < 0 || i >= static_cast<long>(nodes.size()) ||
                j >= static_cast<long>(nodes.size())) {
                throw ParseError(line, "dangling edge (" + toks[1] + ", " + toks[2] + ")");
            }
            if (i == j) throw ParseError(line, "self edge on node " + toks[1]);
            if (!(chi2 >= 0)) throw ParseError(line, "chi2 must be nonnegative");
            InstanceEdge e{static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j)), chi2};
            if (!edge_seen.emplace(e.i, e.j).second) {
                throw ParseError(line, "duplicate edge (" + toks[1] + ", " + toks[2] + ")");
            }
            edge_list.push_back(e);
        } else if (kw == "videoscores") {
            if (have_video) throw ParseError(line, "duplicate section 'videoscores'");
            const LabelSpace& sp = need_space(line);
            video_scores = parse_scores(toks, 1, sp.num_valid() + 1, line, "videoscores");
            have_video = true;
        } else if (kw == "frames") {
            if (have_frames) throw ParseError(line, "duplicate section 'frames'");
            if (toks.size() != 4) throw ParseError(line, "usage: frames <count> <W> <H>");
            frame_count = static_cast<int>(parse_int(toks[1], line));
            frame_w = static_cast<int>(parse_int(toks[2], line));
            frame_h = static_cast<int>(parse_int(toks[3], line));
            if (frame_count <= 0 || frame_w <= 0 || frame_h <= 0) {
                throw ParseError(line, "frame geometry must be positive");
            }
            have_frames = true;
        } else if (kw == "pixels") {
            if (!have_frames) throw ParseError(line, "pixels before 'frames' declaration");
            int id = node_ref(toks, line);
            if (pixel_masks.empty()) pixel_masks.assign(nodes.size(), {});
            if (toks.size() < 4) throw ParseError(line, "usage: pixels <id> <frame> <p> <x y>...");
            long frame = parse_int(toks[2], line);
            long p = parse_int(toks[3], line);
            if (frame < 0 || frame >= frame_count) throw ParseError(line, "pixel frame out of range");
            if (p <= 0 || static_cast<long>(toks.size()) - 4 != 2 * p) {
                throw ParseError(line, "pixel count does not match coordinates");
            }
            for (long k = 0; k < p; ++k) {
                int x = static_cast<int>(parse_int(toks[4 + 2 * k], line));
                int y = static_cast<int>(parse_int(toks[5 + 2 * k], line));
                if (x < 0 || x >= frame_w || y < 0 || y >= frame_h) {
                    throw ParseError(line, "pixel outside frame bounds");
                }
                PixelRef ref{static_cast<int>(frame), x, y};
                if (!pixel_owned.insert(ref).second) throw ParseError(line, "pixel claimed twice");
                pixel_masks[id].push_back(ref);
            }
        } else if (kw == "gt") {
            int id = node_ref(toks, line);
            if (gt.empty()) {
                gt.assign(nodes.size(), -1);
                gt_seen.assign(nodes.size(), false);
            }
            if (gt_seen[id]) throw ParseError(line, "duplicate gt for node " + std::to_string(id));
            gt_seen[id] = true;
            any_gt_line = true;
            if (toks.size() != 4) throw ParseError(line, "usage: gt <id> <actor> <action>");
            if (toks[2] == "-" && toks[3] == "-") {
                gt[id] = -1;
            } else {
                const LabelSpace& sp = need_space(line);
                try {
                    gt[id] = sp.tuple_index(toks[2], toks[3]);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(line, e.what());
                }
            }
        } else {
            throw ParseError(line, "unknown keyword '" + kw + "'");
        }
    }

    const int end = reader.line() + 1;
    if (!have_valid) throw ParseError(end, "missing label space declaration");
    if (!have_theta) throw ParseError(end, "missing theta section");
    if (!have_nodes) throw ParseError(end, "missing nodes section");
    if (!have_edges) throw ParseError(end, "missing edges section");
    if (static_cast<int>(edge_list.size()) != declared_edges) {
        throw ParseError(end, "edge count mismatch: declared " + std::to_string(declared_edges) +
                                  ", found " + std::to_string(edge_list.size()));
    }
    for (size_t i = 0; i < nodes.size(); ++i) {
        static const char* names[5] = {"unary_actor", "unary_action", "unary_joint", "cond_action",
                                       "cond_actor"};
        for (int s = 0; s < 5; ++s) {
            if (!node_lines[i][s]) {
                throw ParseError(end, std::string("missing ") + names[s] + " for node " + std::to_string(i));
            }
        }
    }

    inst.space = *space;
    inst.nodes = std::move(nodes);
    inst.edges = std::move(edge_list);
    std::sort(inst.edges.begin(), inst.edges.end(),
              [](const InstanceEdge& a, const InstanceEdge& b) {
                  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    inst.theta_actor = th_a;
    inst.theta_action = th_y;
    inst.theta_joint = th_z;
    inst.video_scores = std::move(video_scores);
    inst.frame_count = frame_count;
    inst.frame_w = frame_w;
    inst.frame_h = frame_h;
    for (auto& mask : pixel_masks) std::sort(mask.begin(), mask.end());
    inst.pixels = std::move(pixel_masks);
    if (any_gt_line) inst.gt = std::move(gt);
    inst.validate();
    return inst;
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
    inst.validate();
    const LabelSpace& sp = inst.space;
    std::ostringstream out;
    out << "a2dcrf 1\n";
    out << "actors " << sp.num_actors();
    for (const auto& a : sp.actors()) out << ' ' << a;
    out << "\nactions " << sp.num_actions();
    for (const auto& y : sp.actions()) out << ' ' << y;
    out << "\nvalid " << sp.num_valid() << '\n';
    for (const auto& [a, y] : sp.valid_pairs()) {
        out << sp.actors()[a] << ' ' << sp.actions()[y] << '\n';
    }
    out << "theta " << format_real(inst.theta_actor) << ' ' << format_real(inst.theta_action) << ' '
        << format_real(inst.theta_joint) << '\n';
    out << "nodes " << inst.num_nodes() << '\n';
    auto emit = [&](const char* kw, int id, const std::vector<double>& v) {
        out << kw << ' ' << id;
        for (double s : v) out << ' ' << format_real(s);
        out << '\n';
    };
    for (int i = 0; i < inst.num_nodes(); ++i) emit("unary_actor", i, inst.nodes[i].unary_actor);
    for (int i = 0; i < inst.num_nodes(); ++i) emit("unary_action", i, inst.nodes[i].unary_action);
    for (int i = 0; i < inst.num_nodes(); ++i) emit("unary_joint", i, inst.nodes[i].unary_joint);
    for (int i = 0; i < inst.num_nodes(); ++i) emit("cond_action", i, inst.nodes[i].cond_action);
    for (int i = 0; i < inst.num_nodes(); ++i) emit("cond_actor", i, inst.nodes[i].cond_actor);
    auto edges = inst.edges;
    std::sort(edges.begin(), edges.end(), [](const InstanceEdge& a, const InstanceEdge& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    out << "edges " << edges.size() << '\n';
    for (const auto& e : edges) {
        out << "edge " << e.i << ' ' << e.j << ' ' << format_real(e.chi2) << '\n';
    }
    if (inst.has_video_scores()) {
        out << "videoscores";
        for (double s : inst.video_scores) out << ' ' << format_real(s);
        out << '\n';
    }
    if (inst.has_frames()) {
        out << "frames " << inst.frame_count << ' ' << inst.frame_w << ' ' << inst.frame_h << '\n';
    }
    if (inst.has_pixels()) {
        for (int i = 0; i < inst.num_nodes(); ++i) {
            auto mask = inst.pixels[i];
            std::sort(mask.begin(), mask.end());
            size_t k = 0;
            while (k < mask.size()) {
                size_t end = k;
                while (end < mask.size() && mask[end].frame == mask[k].frame) ++end;
                out << "pixels " << i << ' ' << mask[k].frame << ' ' << (end - k);
                for (size_t p = k; p < end; ++p) out << ' ' << mask[p].x << ' ' << mask[p].y;
                out << '\n';
                k = end;
            }
        }
    }
    if (inst.has_gt()) {
        for (int i = 0; i < inst.num_nodes(); ++i) {
            if (inst.gt[i] < 0) continue;
            out << "gt " << i << ' ' << sp.actor_name(sp.actor_of(inst.gt[i])) << ' '
                << sp.action_name(sp.action_of(inst.gt[i])) << '\n';
        }
    }
    return out.str();
}

TrackSet parse_tracks(std::istream& in, const LabelSpace& space) {
    LineReader reader(in);
    std::vector<std::string> toks;
    if (!reader.next(toks) || toks.size() != 2 || toks[0] != "a2dtracks" || toks[1] != "1") {
        throw ParseError(reader.line() == 0 ? 1 : reader.line(), "expected header 'a2dtracks 1'");
    }

    TrackSet ts;
    ts.space = space;
    bool have_frames = false;
    std::map<long, size_t> track_of_tid;
    std::vector<std::vector<bool>> box_seen;

    while (reader.next(toks)) {
        const int line = reader.line();
        const std::string& kw = toks[0];
        if (kw == "frames") {
            if (have_frames) throw ParseError(line, "duplicate section 'frames'");
            if (toks.size() != 4) throw ParseError(line, "usage: frames <count> <W> <H>");
            ts.frame_count = static_cast<int>(parse_int(toks[1], line));
            ts.frame_w = static_cast<int>(parse_int(toks[2], line));
            ts.frame_h = static_cast<int>(parse_int(toks[3], line));
            if (ts.frame_count <= 0 || ts.frame_w <= 0 || ts.frame_h <= 0) {
                throw ParseError(line, "frame geometry must be positive");
            }
            have_frames = true;
        } else if (kw == "track") {
            if (!have_frames) throw ParseError(line, "track before 'frames' declaration");
            if (toks.size() != 6) throw ParseError(line, "usage: track <tid> <actor> <action> <t1> <tm>");
            long tid = parse_int(toks[1], line);
            if (track_of_tid.count(tid)) throw ParseError(line, "duplicate track id " + toks[1]);
            Track tr;
            try {
                tr.tuple = space.tuple_index(toks[2], toks[3]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line, e.what());
            }
            tr.t1 = static_cast<int>(parse_int(toks[4], line));
            tr.tm = static_cast<int>(parse_int(toks[5], line));
            if (tr.t1 < 0 || tr.tm < tr.t1 || tr.tm >= ts.frame_count) {
                throw ParseError(line, "track interval out of range");
            }
            tr.boxes.assign(tr.tm - tr.t1 + 1, Box{});
            track_of_tid[tid] = ts.tracks.size();
            box_seen.emplace_back(tr.tm - tr.t1 + 1, false);
            ts.tracks.push_back(std::move(tr));
        } else if (kw == "box") {
            if (toks.size() != 7) throw ParseError(line, "usage: box <tid> <t> <x0> <y0> <x1> <y1>");
            long tid = parse_int(toks[1], line);
            auto it = track_of_tid.find(tid);
            if (it == track_of_tid.end()) throw ParseError(line, "box references unknown track " + toks[1]);
            Track& tr = ts.tracks[it->second];
            long t = parse_int(toks[2], line);
            if (t < tr.t1 || t > tr.tm) throw ParseError(line, "box frame outside track interval");
            Box b{static_cast<int>(parse_int(toks[3], line)), static_cast<int>(parse_int(toks[4], line)),
                  static_cast<int>(parse_int(toks[5], line)), static_cast<int>(parse_int(toks[6], line))};
            if (b.x0 < 0 || b.y0 < 0 || b.x1 < b.x0 || b.y1 < b.y0 || b.x1 >= ts.frame_w ||
                b.y1 >= ts.frame_h) {
                throw ParseError(line, "box outside frame bounds");
            }
            auto& seen = box_seen[it->second];
            if (seen[t - tr.t1]) throw ParseError(line, "duplicate box for frame " + toks[2]);
            seen[t - tr.t1] = true;
            tr.boxes[t - tr.t1] = b;
        } else {
            throw ParseError(line, "unknown keyword '" + kw + "'");
        }
    }

    for (size_t k = 0; k < ts.tracks.size(); ++k) {
        for (size_t t = 0; t < box_seen[k].size(); ++t) {
            if (!box_seen[k][t]) {
                throw ParseError(reader.line() + 1, "track " + std::to_string(k) + " missing box for frame " +
                                                        std::to_string(ts.tracks[k].t1 + static_cast<int>(t)));
            }
        }
    }
    return ts;
}

TrackSet parse_tracks(const std::string& text, const LabelSpace& space) {
    std::istringstream in(text);
    return parse_tracks(in, space);
}

TrackSet parse_tracks_file(const std::string& path, const LabelSpace& space) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open track file: " + path);
    return parse_tracks(in, space);
}

std::string serialize_tracks(const TrackSet& ts) {
    std::ostringstream out;
    out << "a2dtracks 1\n";
    out << "frames " << ts.frame_count << ' ' << ts.frame_w << ' ' << ts.frame_h << '\n';
    for (size_t k = 0; k < ts.tracks.size(); ++k) {
        const Track& tr = ts.tracks[k];
        out << "track " << k << ' ' << ts.space.actor_name(ts.space.actor_of(tr.tuple)) << ' '
            << ts.space.action_name(ts.space.action_of(tr.tuple)) << ' ' << tr.t1 << ' ' << tr.tm << '\n';
        for (int t = tr.t1; t <= tr.tm; ++t) {
            const Box& b = tr.boxes[t - tr.t1];
            out << "box " << k << ' ' << t << ' ' << b.x0 << ' ' << b.y0 << ' ' << b.x1 << ' ' << b.y1
                << '\n';
        }
    }
    return out.str();
}

std::vector<PairLabel> parse_labeling(std::istream& in, const LabelSpace& space) {
    LineReader reader(in);
    std::vector<std::string> toks;
    if (!reader.next(toks) || toks.size() != 2 || toks[0] != "a2dlabeling" || toks[1] != "1") {
        throw ParseError(reader.line() == 0 ? 1 : reader.line(), "expected header 'a2dlabeling 1'");
    }
    std::map<long, PairLabel> by_id;
    while (reader.next(toks)) {
        const int line = reader.line();
        if (toks.size() != 3) throw ParseError(line, "usage: <node_id> <actor> <action>");
        long id = parse_int(toks[0], line);
        if (id < 0) throw ParseError(line, "negative node id");
        if (by_id.count(id)) throw ParseError(line, "duplicate labeling for node " + toks[0]);
        PairLabel p;
        try {
            p.actor = space.actor_index(toks[1]);
            p.action = space.action_index(toks[2]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
        by_id[id] = p;
    }
    if (by_id.empty()) throw ParseError(reader.line() + 1, "empty labeling");
    std::vector<PairLabel> out(by_id.rbegin()->first + 1);
    long expect = 0;
    for (const auto& [id, p] : by_id) {
        if (id != expect) throw ParseError(reader.line() + 1, "missing labeling for node " + std::to_string(expect));
        out[id] = p;
        ++expect;
    }
    return out;
}

std::vector<PairLabel> parse_labeling_file(const std::string& path, const LabelSpace& space) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labeling file: " + path);
    return parse_labeling(in, space);
}

std::string serialize_labeling(const std::vector<PairLabel>& labeling, const LabelSpace& space) {
    std::ostringstream out;
    out << "a2dlabeling 1\n";
    for (size_t i = 0; i < labeling.size(); ++i) {
        out << i << ' ' << space.actor_name(labeling[i].actor) << ' '
            << space.action_name(labeling[i].action) << '\n';
    }
    return out.str();
}

std::vector<int> majority_vote_gt(const std::vector<FrameGrid>& labeled_frames, const Instance& inst) {
    if (!inst.has_pixels()) throw std::invalid_argument("instance has no pixel masks");
    std::map<int, const FrameGrid*> by_frame;
    for (const auto& g : labeled_frames) by_frame[g.frame] = &g;

    const int num_tuples = inst.space.num_tuples();
    std::vector<int> out(inst.num_nodes(), -1);
    std::vector<long> counts(num_tuples);
    for (int i = 0; i < inst.num_nodes(); ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& p : inst.pixels[i]) {
            auto it = by_frame.find(p.frame);
            if (it == by_frame.end()) continue;  // frame without labels
            const FrameGrid& g = *it->second;
            if (p.x >= g.w || p.y >= g.h) throw std::invalid_argument("mask pixel outside labeled frame");
            int c = g.at(p.x, p.y);
            if (c == -1) continue;
            if (c < 0 || c >= num_tuples) throw std::invalid_argument("labeled frame carries invalid tuple id");
            ++counts[c];
        }
        long best = 0;
        for (int c = 0; c < num_tuples; ++c) {
            if (counts[c] > best) {  // ties keep the lower tuple index
                best = counts[c];
                out[i] = c;
            }
        }
    }
    return out;
}

}  // namespace a2dcrf

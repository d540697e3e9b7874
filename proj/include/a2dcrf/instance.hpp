#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "a2dcrf/label_space.hpp"

namespace a2dcrf {

// Parse failure with the 1-based line number of the offending input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), m_line(line) {}
    int line() const { return m_line; }

private:
    int m_line;
};

// Classifier score tables of one supervoxel node. All scores live in (0,1];
// conditional tables are indexed by valid tuple.
struct NodeScores {
    std::vector<double> unary_actor;   // |actors|
    std::vector<double> unary_action;  // |actions|
    std::vector<double> unary_joint;   // |valid|+1, background last
    std::vector<double> cond_action;   // |valid|, w(y|x)
    std::vector<double> cond_actor;    // |valid|, w(x|y)
    bool operator==(const NodeScores&) const = default;
};

struct InstanceEdge {
    int i = 0;
    int j = 0;       // stored with i < j
    double chi2 = 0; // feature histogram distance, >= 0
    bool operator==(const InstanceEdge&) const = default;
};

struct PixelRef {
    int frame = 0;
    int x = 0;
    int y = 0;
    auto operator<=>(const PixelRef&) const = default;
};

// A supervoxel-graph problem instance: label space, per-node score tables,
// chi^2-weighted edges and the per-layer theta parameters, plus the optional
// video-level scores, frame geometry, pixel masks and ground truth.
struct Instance {
    LabelSpace space = LabelSpace::mini();
    std::vector<NodeScores> nodes;
    std::vector<InstanceEdge> edges;
    double theta_actor = 1.0;
    double theta_action = 1.0;
    double theta_joint = 1.0;
    std::vector<double> video_scores;            // empty or |valid|+1
    int frame_count = 0;                         // 0 = no frame geometry
    int frame_w = 0;
    int frame_h = 0;
    std::vector<std::vector<PixelRef>> pixels;   // empty or per node, sorted
    std::vector<int> gt;                         // empty or per node tuple index, -1 unlabeled

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    bool has_video_scores() const { return !video_scores.empty(); }
    bool has_frames() const { return frame_count > 0; }
    bool has_pixels() const { return !pixels.empty(); }
    bool has_gt() const;

    // Checks every structural invariant; throws std::invalid_argument.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

// One frame of per-pixel class ids, row-major; -1 marks unlabeled pixels.
struct FrameGrid {
    int frame = 0;
    int w = 0;
    int h = 0;
    std::vector<int> cells;

    int at(int x, int y) const { return cells[static_cast<size_t>(y) * w + x]; }
    void set(int x, int y, int v) { cells[static_cast<size_t>(y) * w + x] = v; }
};

struct Box {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive pixel coordinates
    bool operator==(const Box&) const = default;
};

// One actor-action track: a tuple label with one bounding box per frame over
// the inclusive interval [t1, tm].
struct Track {
    int tuple = 0;
    int t1 = 0;
    int tm = 0;
    std::vector<Box> boxes;  // boxes[t - t1]
    bool operator==(const Track&) const = default;
};

struct TrackSet {
    LabelSpace space = LabelSpace::mini();
    int frame_count = 0;
    int frame_w = 0;
    int frame_h = 0;
    std::vector<Track> tracks;
    bool operator==(const TrackSet&) const = default;
};

Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance parse_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);

// Track files carry their own label space declaration so they can be checked
// without the instance at hand.
TrackSet parse_tracks(std::istream& in, const LabelSpace& space);
TrackSet parse_tracks(const std::string& text, const LabelSpace& space);
TrackSet parse_tracks_file(const std::string& path, const LabelSpace& space);
std::string serialize_tracks(const TrackSet& tracks);

// Per-node pair labelings as written by the solve subcommand.
std::vector<PairLabel> parse_labeling(std::istream& in, const LabelSpace& space);
std::vector<PairLabel> parse_labeling_file(const std::string& path, const LabelSpace& space);
std::string serialize_labeling(const std::vector<PairLabel>& labeling, const LabelSpace& space);

// Derives per-node ground truth from sparsely labeled frames by majority vote
// over each node's labeled pixels; ties break to the lower tuple index and
// nodes without labeled pixels get -1.
std::vector<int> majority_vote_gt(const std::vector<FrameGrid>& labeled_frames, const Instance& inst);

}  // namespace a2dcrf

#pragma once

#include <vector>

namespace a2dcrf {

// s-t max-flow / min-cut on a directed network with real capacities.
// Augmenting paths are found by two search trees grown from the terminals;
// the trees survive each augmentation through orphan adoption. Residuals at
// or below kSaturationEps count as saturated.
class FlowNetwork {
public:
    enum class Side { source, sink };
    static constexpr double kSaturationEps = 1e-12;

    FlowNetwork() = default;
    FlowNetwork(int expected_nodes, int expected_edges);

    int add_nodes(int count = 1);  // returns the first new id
    void add_tweights(int node, double cap_source, double cap_sink);
    // Adds the arc pair (from->to with cap, to->from with rev_cap); returns the
    // forward arc id, the reverse arc is id ^ 1.
    int add_edge(int from, int to, double cap, double rev_cap);

    double max_flow();

    // Valid after max_flow; nodes unreachable from the source fall on the
    // sink side.
    Side side(int node) const;

    int num_nodes() const { return static_cast<int>(m_first.size()); }
    double arc_residual(int arc) const { return m_arcs[arc].rcap; }
    double terminal_residual(int node) const { return m_tr[node]; }

private:
    struct Arc {
        int head = 0;
        int next = -1;
        double rcap = 0;
    };

    static constexpr int kNoParent = -1;
    static constexpr int kTerminal = -2;
    static constexpr int kOrphan = -3;
    enum : unsigned char { kFree = 0, kSource = 1, kSink = 2 };

    std::vector<Arc> m_arcs;
    std::vector<int> m_first;
    std::vector<double> m_tr;  // >0: residual from source, <0: residual to sink
    double m_flow = 0;

    std::vector<unsigned char> m_tree;
    std::vector<int> m_parent;  // arc from node to its parent
    std::vector<int> m_ts;
    std::vector<int> m_dist;
    std::vector<unsigned char> m_active;
    std::vector<int> m_queue;
    size_t m_queue_head = 0;
    std::vector<int> m_orphans;
    int m_time = 0;

    void activate(int node);
    int next_active();
    double tree_residual(int node, int arc) const;
    void augment(int connect_arc);
    void adopt();
    bool rooted(int node);
};

}  // namespace a2dcrf

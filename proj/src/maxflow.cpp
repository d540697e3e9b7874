#include "a2dcrf/maxflow.hpp"

#include <algorithm>
#include <stdexcept>

namespace a2dcrf {

FlowNetwork::FlowNetwork(int expected_nodes, int expected_edges) {
    m_first.reserve(expected_nodes);
    m_tr.reserve(expected_nodes);
    m_arcs.reserve(2 * static_cast<size_t>(expected_edges));
}

int FlowNetwork::add_nodes(int count) {
    int first = num_nodes();
    m_first.insert(m_first.end(), count, -1);
    m_tr.insert(m_tr.end(), count, 0.0);
    return first;
}

void FlowNetwork::add_tweights(int node, double cap_source, double cap_sink) {
    if (cap_source < 0 || cap_sink < 0) throw std::invalid_argument("negative terminal capacity");
    m_flow += std::min(cap_source, cap_sink);
    m_tr[node] += cap_source - cap_sink;
}

int FlowNetwork::add_edge(int from, int to, double cap, double rev_cap) {
    if (from == to) throw std::invalid_argument("self edge");
    if (cap < 0 || rev_cap < 0) throw std::invalid_argument("negative edge capacity");
    int a = static_cast<int>(m_arcs.size());
    m_arcs.push_back({to, m_first[from], cap});
    m_first[from] = a;
    m_arcs.push_back({from, m_first[to], rev_cap});
    m_first[to] = a + 1;
    return a;
}

void FlowNetwork::activate(int node) {
    if (!m_active[node]) {
        m_active[node] = 1;
        m_queue.push_back(node);
    }
}

int FlowNetwork::next_active() {
    while (m_queue_head < m_queue.size()) {
        int p = m_queue[m_queue_head++];
        m_active[p] = 0;
        if (m_tree[p] != kFree) return p;
    }
    return -1;
}

// Residual available for growing `node`'s tree through its own arc `arc`.
double FlowNetwork::tree_residual(int node, int arc) const {
    return m_tree[node] == kSource ? m_arcs[arc].rcap : m_arcs[arc ^ 1].rcap;
}

bool FlowNetwork::rooted(int node) {
    static thread_local std::vector<int> path;
    path.clear();
    int i = node;
    int base;
    while (true) {
        if (m_ts[i] == m_time) {
            base = m_dist[i];
            break;
        }
        int pa = m_parent[i];
        if (pa == kTerminal) {
            m_ts[i] = m_time;
            m_dist[i] = 1;
            base = 1;
            break;
        }
        if (pa == kOrphan || pa == kNoParent) return false;
        path.push_back(i);
        i = m_arcs[pa].head;
    }
    int d = base;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        m_ts[*it] = m_time;
        m_dist[*it] = ++d;
    }
    return true;
}

void FlowNetwork::augment(int connect_arc) {
    const int u = m_arcs[connect_arc ^ 1].head;  // source-tree endpoint
    const int v = m_arcs[connect_arc].head;      // sink-tree endpoint

    double bottleneck = m_arcs[connect_arc].rcap;
    for (int i = u;;) {
        int pa = m_parent[i];
        if (pa == kTerminal) {
            bottleneck = std::min(bottleneck, m_tr[i]);
            break;
        }
        bottleneck = std::min(bottleneck, m_arcs[pa ^ 1].rcap);
        i = m_arcs[pa].head;
    }
    for (int i = v;;) {
        int pa = m_parent[i];
        if (pa == kTerminal) {
            bottleneck = std::min(bottleneck, -m_tr[i]);
            break;
        }
        bottleneck = std::min(bottleneck, m_arcs[pa].rcap);
        i = m_arcs[pa].head;
    }

    m_arcs[connect_arc].rcap -= bottleneck;
    m_arcs[connect_arc ^ 1].rcap += bottleneck;
    for (int i = u;;) {
        int pa = m_parent[i];
        if (pa == kTerminal) {
            m_tr[i] -= bottleneck;
            if (m_tr[i] <= kSaturationEps) {
                m_parent[i] = kOrphan;
                m_orphans.push_back(i);
            }
            break;
        }
        m_arcs[pa ^ 1].rcap -= bottleneck;
        m_arcs[pa].rcap += bottleneck;
        if (m_arcs[pa ^ 1].rcap <= kSaturationEps) {
            m_parent[i] = kOrphan;
            m_orphans.push_back(i);
        }
        i = m_arcs[pa].head;
    }
    for (int i = v;;) {
        int pa = m_parent[i];
        if (pa == kTerminal) {
            m_tr[i] += bottleneck;
            if (-m_tr[i] <= kSaturationEps) {
                m_parent[i] = kOrphan;
                m_orphans.push_back(i);
            }
            break;
        }
        m_arcs[pa].rcap -= bottleneck;
        m_arcs[pa ^ 1].rcap += bottleneck;
        if (m_arcs[pa].rcap <= kSaturationEps) {
            m_parent[i] = kOrphan;
            m_orphans.push_back(i);
        }
        i = m_arcs[pa].head;
    }
    m_flow += bottleneck;
}

void FlowNetwork::adopt() {
    size_t head = 0;
    while (head < m_orphans.size()) {
        int p = m_orphans[head++];
        if (m_tree[p] == kFree) continue;
        const unsigned char tree = m_tree[p];

        int new_parent = kNoParent;
        for (int a = m_first[p]; a != -1; a = m_arcs[a].next) {
            int q = m_arcs[a].head;
            if (m_tree[q] != tree) continue;
            // Residual must point toward p for the source tree, away for sink.
            double res = tree == kSource ? m_arcs[a ^ 1].rcap : m_arcs[a].rcap;
            if (res <= kSaturationEps) continue;
            if (!rooted(q)) continue;
            new_parent = a;
            break;
        }

        if (new_parent != kNoParent) {
            m_parent[p] = new_parent;
            int q = m_arcs[new_parent].head;
            m_ts[p] = m_time;
            m_dist[p] = m_dist[q] + 1;
        } else {
            for (int a = m_first[p]; a != -1; a = m_arcs[a].next) {
                int q = m_arcs[a].head;
                if (m_tree[q] != tree) continue;
                double res = tree == kSource ? m_arcs[a ^ 1].rcap : m_arcs[a].rcap;
                if (res > kSaturationEps) activate(q);
                int qp = m_parent[q];
                if (qp >= 0 && m_arcs[qp].head == p) {
                    m_parent[q] = kOrphan;
                    m_orphans.push_back(q);
                }
            }
            m_tree[p] = kFree;
        }
    }
    m_orphans.clear();
}

double FlowNetwork::max_flow() {
    const int n = num_nodes();
    m_tree.assign(n, kFree);
    m_parent.assign(n, kNoParent);
    m_ts.assign(n, 0);
    m_dist.assign(n, 0);
    m_active.assign(n, 0);
    m_queue.clear();
    m_queue_head = 0;
    m_orphans.clear();
    m_time = 0;

    for (int i = 0; i < n; ++i) {
        if (m_tr[i] > kSaturationEps) {
            m_tree[i] = kSource;
            m_parent[i] = kTerminal;
            m_dist[i] = 1;
            activate(i);
        } else if (m_tr[i] < -kSaturationEps) {
            m_tree[i] = kSink;
            m_parent[i] = kTerminal;
            m_dist[i] = 1;
            activate(i);
        }
    }

    while (true) {
        int p = next_active();
        if (p < 0) break;

        int connect = -1;
        for (int a = m_first[p]; a != -1; a = m_arcs[a].next) {
            if (tree_residual(p, a) <= kSaturationEps) continue;
            int q = m_arcs[a].head;
            if (m_tree[q] == kFree) {
                m_tree[q] = m_tree[p];
                m_parent[q] = a ^ 1;
                m_ts[q] = m_ts[p];
                m_dist[q] = m_dist[p] + 1;
                activate(q);
            } else if (m_tree[q] != m_tree[p]) {
                connect = m_tree[p] == kSource ? a : (a ^ 1);
                break;
            }
        }

        ++m_time;
        if (connect >= 0) {
            activate(p);  // not exhausted, rescan after adoption
            augment(connect);
            adopt();
        }
    }
    return m_flow;
}

FlowNetwork::Side FlowNetwork::side(int node) const {
    return m_tree[node] == kSource ? Side::source : Side::sink;
}

}  // namespace a2dcrf

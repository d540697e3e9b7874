#pragma once

#include <string>
#include <utility>
#include <vector>

namespace a2dcrf {

// A pair of label indices. `actor` may equal LabelSpace::background_actor()
// (the background sentinel); `action` is always a real action index.
struct PairLabel {
    int actor = 0;
    int action = 0;
    bool operator==(const PairLabel&) const = default;
};

// Actor and action label universes plus the set of valid actor-action pairs.
// Tuple indices follow the declaration order of the valid pairs; one
// background tuple is appended after them. The background tuple reads back
// as the pair (background sentinel, "none").
class LabelSpace {
public:
    LabelSpace(std::vector<std::string> actors, std::vector<std::string> actions,
               std::vector<std::pair<int, int>> valid_pairs);

    // Canonical 7-actor / 9-action space with its 43 valid pairs.
    static LabelSpace a2d();
    // Tiny space for desk-scale experiments: 2 actors, 3 actions, 4 valid pairs.
    static LabelSpace mini();
    static const char* background_name() { return "background"; }

    int num_actors() const { return static_cast<int>(m_actors.size()); }
    int num_actions() const { return static_cast<int>(m_actions.size()); }
    int num_valid() const { return static_cast<int>(m_valid.size()); }
    int num_tuples() const { return num_valid() + 1; }
    int background_tuple() const { return num_valid(); }
    int background_actor() const { return num_actors(); }
    int none_action() const { return m_none_action; }

    const std::vector<std::string>& actors() const { return m_actors; }
    const std::vector<std::string>& actions() const { return m_actions; }
    const std::vector<std::pair<int, int>>& valid_pairs() const { return m_valid; }

    // Component indices of a tuple; the background tuple maps to
    // (background_actor(), none_action()).
    int actor_of(int tuple) const;
    int action_of(int tuple) const;
    PairLabel pair_of(int tuple) const { return {actor_of(tuple), action_of(tuple)}; }

    // Total over all index pairs; out-of-range indices are simply invalid.
    bool is_valid_tuple(int actor, int action) const;
    bool is_valid_pair(const PairLabel& p) const { return is_valid_tuple(p.actor, p.action); }

    // Throws std::invalid_argument naming the pair when it is not valid.
    int tuple_index(int actor, int action) const;
    int tuple_index(const std::string& actor, const std::string& action) const;

    // Tuple index when the pair is valid, otherwise a distinct id >= num_tuples().
    // Used by the metrics so that invalid predictions never match ground truth.
    int class_of_pair(const PairLabel& p) const;

    // Name lookups; the background sentinel name resolves for actors.
    int actor_index(const std::string& name) const;
    int action_index(const std::string& name) const;
    std::string actor_name(int actor) const;
    std::string action_name(int action) const;

    bool operator==(const LabelSpace&) const = default;

private:
    std::vector<std::string> m_actors;
    std::vector<std::string> m_actions;
    std::vector<std::pair<int, int>> m_valid;
    std::vector<int> m_pair_to_tuple;  // (num_actors+1) x num_actions, -1 = invalid
    int m_none_action = -1;

    int pair_slot(int actor, int action) const { return actor * num_actions() + action; }
};

}  // namespace a2dcrf

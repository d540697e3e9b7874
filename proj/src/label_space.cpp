#include "a2dcrf/label_space.hpp"

#include <set>
#include <stdexcept>

namespace a2dcrf {

namespace {

void check_names(const std::vector<std::string>& names, const char* kind) {
    if (names.empty()) {
        throw std::invalid_argument(std::string(kind) + " list is empty");
    }
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty() || n == "-" || n == LabelSpace::background_name()) {
            throw std::invalid_argument(std::string("reserved or empty ") + kind + " name '" + n + "'");
        }
        if (!seen.insert(n).second) {
            throw std::invalid_argument(std::string("duplicate ") + kind + " name '" + n + "'");
        }
    }
}

}  // namespace

LabelSpace::LabelSpace(std::vector<std::string> actors, std::vector<std::string> actions,
                       std::vector<std::pair<int, int>> valid_pairs)
    : m_actors(std::move(actors)), m_actions(std::move(actions)), m_valid(std::move(valid_pairs)) {
    check_names(m_actors, "actor");
    check_names(m_actions, "action");
    for (int y = 0; y < num_actions(); ++y) {
        if (m_actions[y] == "none") m_none_action = y;
    }
    if (m_none_action < 0) {
        throw std::invalid_argument("action list must contain 'none'");
    }
    if (m_valid.empty()) {
        throw std::invalid_argument("valid pair list is empty");
    }

    m_pair_to_tuple.assign(static_cast<size_t>(num_actors() + 1) * num_actions(), -1);
    for (int t = 0; t < num_valid(); ++t) {
        auto [a, y] = m_valid[t];
        if (a < 0 || a >= num_actors() || y < 0 || y >= num_actions()) {
            throw std::invalid_argument("valid pair " + std::to_string(t) + " references out-of-range indices");
        }
        int& slot = m_pair_to_tuple[pair_slot(a, y)];
        if (slot != -1) {
            throw std::invalid_argument("duplicate valid pair (" + m_actors[a] + ", " + m_actions[y] + ")");
        }
        slot = t;
    }
    m_pair_to_tuple[pair_slot(background_actor(), m_none_action)] = background_tuple();
}

LabelSpace LabelSpace::a2d() {
    const std::vector<std::string> actors = {"adult", "baby", "ball", "bird", "car", "cat", "dog"};
    const std::vector<std::string> actions = {"climbing", "crawling", "eating",  "flying", "jumping",
                                              "rolling",  "running",  "walking", "none"};
    // Valid actions per actor, by name.
    const std::vector<std::pair<const char*, std::vector<const char*>>> table = {
        {"adult", {"climbing", "crawling", "eating", "jumping", "rolling", "running", "walking", "none"}},
        {"baby", {"climbing", "crawling", "rolling", "walking", "none"}},
        {"ball", {"flying", "jumping", "rolling", "none"}},
        {"bird", {"climbing", "eating", "flying", "jumping", "rolling", "walking", "none"}},
        {"car", {"flying", "jumping", "rolling", "running", "none"}},
        {"cat", {"climbing", "eating", "jumping", "rolling", "running", "walking", "none"}},
        {"dog", {"crawling", "eating", "jumping", "rolling", "running", "walking", "none"}},
    };
    std::vector<std::pair<int, int>> valid;
    for (int a = 0; a < static_cast<int>(table.size()); ++a) {
        for (const char* act : table[a].second) {
            int y = 0;
            while (actions[y] != act) ++y;
            valid.emplace_back(a, y);
        }
    }
    return LabelSpace(actors, actions, valid);
}

LabelSpace LabelSpace::mini() {
    return LabelSpace({"fox", "ball"}, {"run", "roll", "none"},
                      {{0, 0}, {0, 2}, {1, 1}, {1, 2}});
}

int LabelSpace::actor_of(int tuple) const {
    if (tuple == background_tuple()) return background_actor();
    return m_valid.at(tuple).first;
}

int LabelSpace::action_of(int tuple) const {
    if (tuple == background_tuple()) return m_none_action;
    return m_valid.at(tuple).second;
}

bool LabelSpace::is_valid_tuple(int actor, int action) const {
    if (actor < 0 || actor > num_actors() || action < 0 || action >= num_actions()) return false;
    return m_pair_to_tuple[pair_slot(actor, action)] != -1;
}

int LabelSpace::tuple_index(int actor, int action) const {
    if (!is_valid_tuple(actor, action)) {
        std::string a = (actor >= 0 && actor <= num_actors()) ? actor_name(actor) : std::to_string(actor);
        std::string y = (action >= 0 && action < num_actions()) ? m_actions[action] : std::to_string(action);
        throw std::invalid_argument("invalid tuple (" + a + ", " + y + ")");
    }
    return m_pair_to_tuple[pair_slot(actor, action)];
}

int LabelSpace::tuple_index(const std::string& actor, const std::string& action) const {
    return tuple_index(actor_index(actor), action_index(action));
}

int LabelSpace::class_of_pair(const PairLabel& p) const {
    if (is_valid_tuple(p.actor, p.action)) return m_pair_to_tuple[pair_slot(p.actor, p.action)];
    return num_tuples() + p.actor * num_actions() + p.action;
}

int LabelSpace::actor_index(const std::string& name) const {
    if (name == background_name()) return background_actor();
    for (int a = 0; a < num_actors(); ++a) {
        if (m_actors[a] == name) return a;
    }
    throw std::invalid_argument("unknown actor '" + name + "'");
}

int LabelSpace::action_index(const std::string& name) const {
    for (int y = 0; y < num_actions(); ++y) {
        if (m_actions[y] == name) return y;
    }
    throw std::invalid_argument("unknown action '" + name + "'");
}

std::string LabelSpace::actor_name(int actor) const {
    if (actor == background_actor()) return background_name();
    return m_actors.at(actor);
}

std::string LabelSpace::action_name(int action) const { return m_actions.at(action); }

}  // namespace a2dcrf

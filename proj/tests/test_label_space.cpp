#include <doctest.h>

#include <stdexcept>

#include <set>

#include "a2dcrf/label_space.hpp"

using namespace a2dcrf;

TEST_CASE("a2d space has 43 valid pairs and 44 tuples") {
    LabelSpace sp = LabelSpace::a2d();
    CHECK(sp.num_actors() == 7);
    CHECK(sp.num_actions() == 9);
    CHECK(sp.num_valid() == 43);
    CHECK(sp.num_tuples() == 44);

    // Every actor has between one and nine valid actions.
    std::vector<int> per_actor(sp.num_actors(), 0);
    for (const auto& [a, y] : sp.valid_pairs()) ++per_actor[a];
    for (int c : per_actor) {
        CHECK(c >= 1);
        CHECK(c <= 9);
    }
}

TEST_CASE("custom spaces count tuples as valid pairs plus background") {
    LabelSpace one({"a"}, {"none"}, {{0, 0}});
    CHECK(one.num_tuples() == 2);

    LabelSpace full({"a", "b"}, {"x", "y", "none"},
                    {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
    CHECK(full.num_tuples() == 7);
}

TEST_CASE("tuple_index follows declaration order with background last") {
    LabelSpace sp = LabelSpace::mini();
    CHECK(sp.tuple_index("fox", "run") == 0);
    CHECK(sp.tuple_index(LabelSpace::background_name(), "none") == sp.num_valid());
    CHECK_THROWS_WITH_AS(sp.tuple_index("fox", "roll"), "invalid tuple (fox, roll)",
                         std::invalid_argument);
}

TEST_CASE("a2d rejects the known invalid combinations") {
    LabelSpace sp = LabelSpace::a2d();
    CHECK_THROWS_AS(sp.tuple_index("adult", "flying"), std::invalid_argument);
    CHECK_THROWS_AS(sp.tuple_index("ball", "running"), std::invalid_argument);
    CHECK(sp.is_valid_tuple(sp.actor_index("car"), sp.action_index("running")));
    CHECK_FALSE(sp.is_valid_tuple(sp.actor_index("ball"), sp.action_index("running")));
    CHECK(sp.is_valid_tuple(sp.background_actor(), sp.none_action()));
}

TEST_CASE("is_valid_tuple is total over index pairs") {
    LabelSpace sp = LabelSpace::mini();
    CHECK_FALSE(sp.is_valid_tuple(-1, 0));
    CHECK_FALSE(sp.is_valid_tuple(0, 99));
    CHECK_FALSE(sp.is_valid_tuple(99, 0));
}

TEST_CASE("tuple index round trips over every tuple") {
    for (const LabelSpace& sp : {LabelSpace::a2d(), LabelSpace::mini()}) {
        for (int t = 0; t < sp.num_tuples(); ++t) {
            int a = sp.actor_of(t);
            int y = sp.action_of(t);
            CHECK(sp.is_valid_tuple(a, y));
            CHECK(sp.tuple_index(a, y) == t);
        }
        // Validity and index lookup agree everywhere.
        for (int a = 0; a <= sp.num_actors(); ++a) {
            for (int y = 0; y < sp.num_actions(); ++y) {
                if (sp.is_valid_tuple(a, y)) {
                    CHECK_NOTHROW(sp.tuple_index(a, y));
                } else {
                    CHECK_THROWS_AS(sp.tuple_index(a, y), std::invalid_argument);
                }
            }
        }
    }
}

TEST_CASE("class ids of invalid pairs never collide with tuples") {
    LabelSpace sp = LabelSpace::a2d();
    std::set<int> ids;
    for (int a = 0; a <= sp.num_actors(); ++a) {
        for (int y = 0; y < sp.num_actions(); ++y) {
            int id = sp.class_of_pair({a, y});
            CHECK(ids.insert(id).second);
            if (!sp.is_valid_tuple(a, y)) CHECK(id >= sp.num_tuples());
        }
    }
}

TEST_CASE("construction rejects bad declarations") {
    CHECK_THROWS_AS(LabelSpace({"a", "a"}, {"none"}, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(LabelSpace({"a"}, {"x"}, {{0, 0}}), std::invalid_argument);  // no "none"
    CHECK_THROWS_AS(LabelSpace({"a"}, {"none"}, {{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(LabelSpace({"a"}, {"none"}, {{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(LabelSpace({"background"}, {"none"}, {{0, 0}}), std::invalid_argument);
}

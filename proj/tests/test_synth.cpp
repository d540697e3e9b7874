#include <doctest.h>

#include <stdexcept>

#include <map>
#include <set>

#include "a2dcrf/models.hpp"
#include "a2dcrf/synth.hpp"

using namespace a2dcrf;

TEST_CASE("same seed gives byte-identical instances") {
    SynthParams p;
    p.space = LabelSpace::a2d();
    p.width = 6;
    p.height = 6;
    p.noise = 0.3;
    p.regions = 4;
    Instance a = generate_instance(p, 7);
    Instance b = generate_instance(p, 7);
    CHECK(serialize_instance(a) == serialize_instance(b));
    Instance c = generate_instance(p, 8);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("noise-free unary argmin recovers the planting for every model") {
    SynthParams p;
    p.space = LabelSpace::mini();
    p.width = 5;
    p.height = 5;
    p.noise = 0.0;
    p.regions = 3;
    Instance inst = generate_instance(p, 11);
    REQUIRE(inst.has_gt());

    for (auto kind : {ModelKind::nb, ModelKind::jps, ModelKind::cond, ModelKind::bilayer,
                      ModelKind::trilayer}) {
        SegOptions opt;
        opt.model = kind;
        SegmentationRun run = run_segmentation(inst, opt);
        for (int i = 0; i < inst.num_nodes(); ++i) {
            CHECK(inst.space.class_of_pair(run.pairs[i]) == inst.gt[i]);
        }
    }
}

TEST_CASE("generated instances carry frequency video scores and full masks") {
    SynthParams p;
    p.space = LabelSpace::mini();
    p.width = 4;
    p.height = 4;
    p.noise = 0.2;
    p.regions = 2;
    Instance inst = generate_instance(p, 3);
    REQUIRE(inst.has_video_scores());
    std::set<int> planted(inst.gt.begin(), inst.gt.end());
    for (int t = 0; t < inst.space.num_tuples(); ++t) {
        if (planted.count(t)) {
            CHECK(inst.video_scores[t] > 0.01);
        } else {
            CHECK(inst.video_scores[t] == doctest::Approx(1e-6));
        }
    }
    // One pixel per lattice cell.
    size_t covered = 0;
    for (const auto& mask : inst.pixels) covered += mask.size();
    CHECK(covered == 16);
}

TEST_CASE("region count larger than the lattice is rejected") {
    SynthParams p;
    p.space = LabelSpace::mini();
    p.width = 2;
    p.height = 2;
    p.regions = 5;
    CHECK_THROWS_AS(generate_instance(p, 1), std::invalid_argument);
}

TEST_CASE("long videos emit one track per constant-action run") {
    LongVideoParams p;
    p.base.space = LabelSpace::a2d();
    p.base.width = 4;
    p.base.height = 4;
    p.base.noise = 0.2;
    p.base.regions = 3;
    p.frames = 10;

    p.switches = 0;
    LongVideo still = generate_long_video(p, 5);
    std::set<int> actors;
    for (const auto& tr : still.tracks.tracks) {
        actors.insert(still.tracks.space.actor_of(tr.tuple));
        CHECK(tr.t1 == 0);
        CHECK(tr.tm == 9);
    }
    CHECK(still.tracks.tracks.size() == actors.size());  // one per planted actor

    p.switches = 2;
    LongVideo moving = generate_long_video(p, 5);
    // Two switches split each actor's timeline into three runs.
    std::map<int, int> runs_per_region;
    for (const auto& tr : moving.tracks.tracks) {
        // Tracks from one region share a bounding box; use it as the key.
        runs_per_region[tr.boxes[0].x0 * 1000 + tr.boxes[0].y0 * 100 + tr.boxes[0].x1 * 10 +
                        tr.boxes[0].y1]++;
    }
    for (const auto& [box, runs] : runs_per_region) CHECK(runs == 3);

    // Adjacent tracks of one actor carry different actions by construction.
    CHECK(moving.instance.num_nodes() == 4 * 4 * 10);
}

TEST_CASE("generated tracks satisfy the track-file invariants") {
    LongVideoParams p;
    p.base.space = LabelSpace::mini();
    p.base.width = 3;
    p.base.height = 3;
    p.base.regions = 2;
    p.frames = 6;
    p.switches = 1;
    LongVideo lv = generate_long_video(p, 21);
    TrackSet round = parse_tracks(serialize_tracks(lv.tracks), p.base.space);
    CHECK(round == lv.tracks);
}

TEST_CASE("too many switches are rejected") {
    LongVideoParams p;
    p.base.space = LabelSpace::mini();
    p.frames = 3;
    p.switches = 3;
    CHECK_THROWS_AS(generate_long_video(p, 1), std::invalid_argument);
}

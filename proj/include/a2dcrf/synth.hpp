#pragma once

#include <cstdint>

#include "a2dcrf/instance.hpp"

namespace a2dcrf {

// Lattice instances with a planted labeling: `regions` seed cells flood-grow
// into connected regions, each carrying one tuple. Score tables boost the
// planted entry to 1-noise with noise-scaled uniform values elsewhere; with
// probability `noise` a table's boost lands on a random entry instead, which
// is what makes individual tables unreliable while their combination stays
// informative. chi2 is small inside regions and large across boundaries;
// video scores are the planted-cell frequencies.
struct SynthParams {
    LabelSpace space = LabelSpace::mini();
    int width = 8;
    int height = 8;
    double noise = 0.2;  // in [0,1)
    double theta_actor = 1.0;
    double theta_action = 1.0;
    double theta_joint = 1.0;
    int regions = 5;
};

Instance generate_instance(const SynthParams& params, std::uint64_t seed);

// Space-time lattice where spatial regions persist over the frames and each
// non-background region's action switches at sampled timestamps. Every
// maximal constant-action run of a region becomes one track.
struct LongVideoParams {
    SynthParams base;
    int frames = 8;
    int switches = 2;  // per planted actor
};

struct LongVideo {
    Instance instance;
    TrackSet tracks;
};

LongVideo generate_long_video(const LongVideoParams& params, std::uint64_t seed);

}  // namespace a2dcrf

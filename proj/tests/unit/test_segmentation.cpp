#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tonalscape/error.hpp"
#include "tonalscape/segmentation.hpp"

using namespace tonalscape;
using midi::NoteEvent;
using midi::Tick;

namespace {

const midi::TempoMap kDefaultMap{{{0, 500000}}};

ResolutionSpec note_value(std::int64_t num, std::int64_t den) { return ResolutionSpec{NoteValue{num, den}}; }

double grand_total(const std::vector<PitchClassVector>& vs) {
    double s = 0.0;
    for (const auto& v : vs) s += v.total();
    return s;
}

PitchClassVector unit(int pc) {
    PitchClassVector v;
    v[pc] = 1.0;
    return v;
}

}  // namespace

TEST(ResolutionSpec, ParsesBothUnits) {
    EXPECT_EQ(ResolutionSpec::parse("1/8"), note_value(1, 8));
    EXPECT_EQ(ResolutionSpec::parse("3/16"), note_value(3, 16));
    EXPECT_EQ(ResolutionSpec::parse("0.5s"), ResolutionSpec{Seconds{0.5}});
    EXPECT_EQ(ResolutionSpec::parse("2s"), ResolutionSpec{Seconds{2.0}});
    for (const char* bad : {"", "1/0", "0/4", "-1/4", "1/", "/4", "0s", "-1s", "s", "quarter", "0.5"}) {
        EXPECT_THROW(ResolutionSpec::parse(bad), Error) << bad;
    }
}

TEST(ResolutionSpec, TextRoundTrip) {
    for (const char* text : {"1/8", "1/4", "3/16", "0.5s", "1.25s"}) {
        EXPECT_EQ(ResolutionSpec::parse(text).to_string(), text);
    }
}

TEST(MakeGrid, QuarterNotes) {
    const auto g = make_grid(1920, note_value(1, 4), kDefaultMap, 480);
    EXPECT_EQ(g.boundaries, (std::vector<Tick>{0, 480, 960, 1440, 1920}));
    EXPECT_EQ(g.n_segments(), 4u);
}

TEST(MakeGrid, PartialFinalSegmentKept) {
    const auto g = make_grid(1000, note_value(1, 4), kDefaultMap, 480);
    EXPECT_EQ(g.boundaries, (std::vector<Tick>{0, 480, 960, 1000}));
}

TEST(MakeGrid, SecondsInvertTempoMap) {
    // 0.5 s at 120 BPM and ppq 480 is exactly one quarter.
    const auto g = make_grid(960, ResolutionSpec{Seconds{0.5}}, kDefaultMap, 480);
    EXPECT_EQ(g.boundaries, (std::vector<Tick>{0, 480, 960}));
}

TEST(MakeGrid, SecondsAcrossTempoChange) {
    // 120 BPM for the first 480 ticks (0.5 s), then 60 BPM (1 s per 480 ticks).
    const midi::TempoMap map{{{0, 500000}, {480, 1000000}}};
    const auto g = make_grid(1440, ResolutionSpec{Seconds{0.5}}, map, 480);
    EXPECT_EQ(g.boundaries, (std::vector<Tick>{0, 480, 720, 960, 1200, 1440}));
}

TEST(MakeGrid, RoundsToNearestTick) {
    // 1/32 at ppq 100 is 12.5 ticks, rounded half up to 13.
    const auto g = make_grid(26, note_value(1, 32), kDefaultMap, 100);
    EXPECT_EQ(g.boundaries, (std::vector<Tick>{0, 13, 26}));
}

TEST(MakeGrid, ZeroLengthSegment) {
    try {
        make_grid(100, note_value(1, 1024), kDefaultMap, 96);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroLengthSegment);
    }
    EXPECT_THROW(make_grid(100, ResolutionSpec{Seconds{1e-6}}, kDefaultMap, 96), Error);
}

TEST(MakeGrid, BoundariesStrictlyIncrease) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Tick span = 1 + rng() % 5000;
        const auto g = make_grid(span, note_value(1, 1 << (rng() % 5)), kDefaultMap, 96);
        EXPECT_EQ(g.boundaries.front(), 0u);
        EXPECT_EQ(g.boundaries.back(), span);
        EXPECT_TRUE(std::adjacent_find(g.boundaries.begin(), g.boundaries.end(), std::greater_equal<>()) ==
                    g.boundaries.end());
    }
}

TEST(SegmentWeights, NoteSplitAcrossSegments) {
    SegmentGrid g{{0, 240, 480}, note_value(1, 8)};
    const std::vector<NoteEvent> notes = {{60, 0, 480, 64, 0, 0}};
    const auto w = segment_weights(notes, g);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0][0], 240.0);
    EXPECT_EQ(w[1][0], 240.0);
    EXPECT_EQ(w[0].total(), 240.0);
}

TEST(SegmentWeights, ChordAccumulatesIndependently) {
    SegmentGrid g{{0, 480, 960}, note_value(1, 4)};
    const std::vector<NoteEvent> notes = {{60, 0, 480, 64, 0, 0}, {64, 0, 480, 64, 0, 0}, {67, 0, 480, 64, 0, 0}};
    const auto w = segment_weights(notes, g);
    EXPECT_EQ(w[0][0], 480.0);
    EXPECT_EQ(w[0][4], 480.0);
    EXPECT_EQ(w[0][7], 480.0);
    EXPECT_EQ(w[0].total(), 1440.0);
    EXPECT_EQ(w[1].total(), 0.0);
}

TEST(SegmentWeights, EmptyNotes) {
    SegmentGrid g{{0, 480, 960}, note_value(1, 4)};
    const auto w = segment_weights({}, g);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(grand_total(w), 0.0);
}

TEST(SegmentWeights, OnsetAndVelocityModes) {
    SegmentGrid g{{0, 480, 960}, note_value(1, 4)};
    const std::vector<NoteEvent> notes = {{60, 100, 700, 127, 0, 0}, {62, 500, 100, 64, 0, 0}};
    WeightOptions onset;
    onset.weighting = Weighting::Onset;
    const auto wo = segment_weights(notes, g, onset);
    EXPECT_EQ(wo[0][0], 1.0);
    EXPECT_EQ(wo[1][2], 1.0);
    EXPECT_EQ(grand_total(wo), 2.0);

    WeightOptions vel;
    vel.weighting = Weighting::Velocity;
    const auto wv = segment_weights(notes, g, vel);
    EXPECT_DOUBLE_EQ(wv[0][0], 380.0);
    EXPECT_DOUBLE_EQ(wv[1][2], 100.0 * 64.0 / 127.0);
}

TEST(SegmentWeights, SecondsWeighting) {
    const midi::TempoMap map{{{0, 500000}, {480, 1000000}}};
    SegmentGrid g{{0, 480, 960}, ResolutionSpec{Seconds{0.5}}};
    const std::vector<NoteEvent> notes = {{60, 0, 960, 64, 0, 0}};
    WeightOptions opts;
    opts.seconds_map = &map;
    opts.ppq = 480;
    const auto w = segment_weights(notes, g, opts);
    EXPECT_DOUBLE_EQ(w[0][0], 0.5);
    EXPECT_DOUBLE_EQ(w[1][0], 1.0);
}

TEST(SegmentWeights, ConservationAndOrderInvariance) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<NoteEvent> notes;
        std::uniform_int_distribution<int> pitch(21, 108);
        std::uniform_int_distribution<Tick> onset(0, 4000);
        std::uniform_int_distribution<Tick> dur(1, 900);
        Tick span = 0;
        double expected = 0.0;
        for (int i = 0; i < 40; ++i) {
            notes.push_back({pitch(rng), onset(rng), dur(rng), 90, 0, 0});
            span = std::max(span, notes.back().end_tick());
        }
        for (const auto& n : notes) expected += static_cast<double>(n.duration_ticks);
        std::sort(notes.begin(), notes.end(), [](auto& a, auto& b) { return a.onset_tick < b.onset_tick; });

        const auto g = make_grid(span, note_value(1, 1 << (rng() % 5)), kDefaultMap, 120);
        const auto w = segment_weights(notes, g);
        EXPECT_EQ(grand_total(w), expected);

        auto shuffled = notes;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(segment_weights(shuffled, g), w);
    }
}

TEST(SegmentWeights, ClippedToGridSpan) {
    SegmentGrid g{{0, 480}, note_value(1, 4)};
    const std::vector<NoteEvent> notes = {{60, 400, 500, 64, 0, 0}, {62, 600, 10, 64, 0, 0}};
    const auto w = segment_weights(notes, g);
    EXPECT_EQ(grand_total(w), 80.0);
}

TEST(Coarsen, IdentityWhenSmallEnough) {
    std::vector<PitchClassVector> vs;
    for (int i = 0; i < 10; ++i) vs.push_back(unit(i));
    EXPECT_EQ(coarsen(vs, 20), vs);
    EXPECT_EQ(coarsen(vs, 10), vs);
}

TEST(Coarsen, PairwiseMerge) {
    const std::vector<PitchClassVector> vs = {unit(0), unit(1), unit(2), unit(3)};
    const auto c = coarsen(vs, 2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], unit(0) + unit(1));
    EXPECT_EQ(c[1], unit(2) + unit(3));
}

TEST(Coarsen, NearEqualGroups) {
    EXPECT_EQ(coarsen_group_sizes(5, 2), (std::vector<std::size_t>{3, 2}));
    EXPECT_EQ(coarsen_group_sizes(7, 3), (std::vector<std::size_t>{3, 2, 2}));
    EXPECT_EQ(coarsen_group_sizes(1000, 250), std::vector<std::size_t>(250, 4));
    EXPECT_THROW(coarsen_group_sizes(5, 0), Error);

    std::vector<PitchClassVector> vs(5, unit(3));
    const auto c = coarsen(vs, 2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0][3], 3.0);
    EXPECT_EQ(c[1][3], 2.0);
}

TEST(Coarsen, ConservesWeightAndNeverGrows) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 600;
        const std::size_t cap = 1 + rng() % 300;
        std::vector<PitchClassVector> vs(n);
        for (auto& v : vs) {
            for (auto& x : v.w) x = static_cast<double>(rng() % 1000);
        }
        const auto c = coarsen(vs, cap);
        EXPECT_LE(c.size(), std::min(n, cap));
        EXPECT_EQ(grand_total(c), grand_total(vs));
        const auto sizes = coarsen_group_sizes(n, cap);
        EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), n);
        const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        EXPECT_LE(*hi - *lo, 1u);
    }
}

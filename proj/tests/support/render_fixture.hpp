#pragma once

// Three-segment fixture shared by the render unit tests and the acceptance
// runner: C major, F major, G7, a half note each at ppq 480.

#include <string>
#include <vector>

#include "tonalscape/render.hpp"

namespace render_fixture {

inline constexpr const char* kStem = "three_segments";

inline tonalscape::PitchClassVector chord(std::initializer_list<int> pcs) {
    return 960.0 * tonalscape::PitchClassVector::from_set(pcs);
}

inline std::vector<tonalscape::PitchClassVector> segments() {
    return {chord({0, 4, 7}), chord({5, 9, 0}), chord({7, 11, 2, 5})};
}

inline tonalscape::Trajectory trajectory() {
    using namespace tonalscape;
    SegmentGrid g{{0, 960, 1920, 2880}, ResolutionSpec{NoteValue{1, 2}}};
    return sliding_trajectory(segments(), g, midi::TempoMap{{{0, 500000}}}, 480, 1);
}

inline std::string wavescape_svg(int k) {
    return tonalscape::render_wavescape_svg(tonalscape::build_wavescape(segments(), k), tonalscape::RenderOptions{});
}

inline std::string disk_svg(int k) {
    tonalscape::RenderOptions o;
    o.width_px = 400;
    o.marker_index = 1;
    return tonalscape::render_disk_svg(k, trajectory(), tonalscape::prototype_positions(k), o);
}

}  // namespace render_fixture
